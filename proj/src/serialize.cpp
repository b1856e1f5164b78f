#include "homog/serialize.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace homog {

using nlohmann::json;

namespace {

ScalarFieldPtr field_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "constant")
        return constant_field(j.at("dim").get<int>(), j.at("value").get<double>());
    if (type == "cosine")
        return cosine_field(j.at("dim").get<int>(), j.at("amplitude").get<double>(),
                            j.at("harmonic").get<int>(), j.value("axis", 0));
    if (type == "plateau")
        return plateau_field(j.at("dim").get<int>(), j.at("delta").get<double>(),
                             j.at("top").get<double>(), j.at("floor").get<double>(),
                             j.value("exponent", 5));
    if (type == "sampled") {
        const json& g = j.at("grid");
        TorusGrid grid(g.at("n").get<int>(), g.at("N").get<int>());
        return sampled_field(
            PeriodicField(grid, j.at("values").get<std::vector<double>>()));
    }
    if (type == "sum") {
        const json& terms = j.at("terms");
        if (terms.empty()) throw Error("empty sum field");
        ScalarFieldPtr acc = field_from_json(terms[0]);
        for (std::size_t i = 1; i < terms.size(); ++i)
            acc = sum_field(acc, field_from_json(terms[i]));
        return acc;
    }
    throw Error("unknown field type: " + type);
}

// Fields are written back as grid samples; analytic field parameters are
// not recoverable through the ScalarField interface.
json field_to_json(const ScalarField& f) {
    const TorusGrid grid(f.dim(), f.dim() == 1 ? 256 : 64);
    PeriodicField samples =
        PeriodicField::sample(grid, [&](const Vec& q) { return f.value(q); });
    return json{{"type", "sampled"},
                {"grid", {{"n", grid.n}, {"N", grid.N}}},
                {"values", samples.values()}};
}

TruncShape shape_from_string(const std::string& s) {
    if (s == "quintic") return TruncShape::Quintic;
    if (s == "cubic") return TruncShape::Cubic;
    throw Error("unknown truncation shape: " + s);
}

std::string shape_to_string(TruncShape s) {
    return s == TruncShape::Quintic ? "quintic" : "cubic";
}

}  // namespace

SpecPtr spec_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "mechanical")
        return HamiltonianSpec::mechanical(field_from_json(j.at("potential")));
    if (kind == "product")
        return HamiltonianSpec::product(field_from_json(j.at("gamma")));
    if (kind == "fiber_only")
        return HamiltonianSpec::fiber_only(j.at("dim").get<int>(),
                                           j.at("a").get<double>(),
                                           j.value("d", 0.0));
    if (kind == "tabulated") {
        const json& g = j.at("qgrid");
        Tabulated tab;
        tab.qgrid = TorusGrid(g.at("n").get<int>(), g.at("N").get<int>());
        tab.pN = j.at("pN").get<int>();
        tab.P = j.at("P").get<double>();
        tab.values = j.at("values").get<std::vector<double>>();
        return HamiltonianSpec::tabulated(std::move(tab));
    }
    if (kind == "truncated") {
        SpecPtr inner = spec_from_json(j.at("inner"));
        const TruncationProfile profile(
            j.at("r").get<double>(), j.at("eps").get<double>(),
            shape_from_string(j.value("shape", "quintic")));
        return apply_truncation(std::move(inner), profile);
    }
    if (kind == "sheared")
        return HamiltonianSpec::sheared(spec_from_json(j.at("inner")),
                                        field_from_json(j.at("g")));
    throw Error("unknown spec kind: " + kind);
}

json spec_to_json(const HamiltonianSpec& spec) {
    return std::visit(
        [&](const auto& form) -> json {
            using T = std::decay_t<decltype(form)>;
            if constexpr (std::is_same_v<T, Mechanical>)
                return json{{"kind", "mechanical"},
                            {"potential", field_to_json(*form.V)}};
            else if constexpr (std::is_same_v<T, ProductForm>)
                return json{{"kind", "product"}, {"gamma", field_to_json(*form.gamma)}};
            else if constexpr (std::is_same_v<T, FiberOnly>)
                return json{{"kind", "fiber_only"},
                            {"dim", form.dim},
                            {"a", form.a},
                            {"d", form.d}};
            else if constexpr (std::is_same_v<T, Tabulated>)
                return json{{"kind", "tabulated"},
                            {"qgrid", {{"n", form.qgrid.n}, {"N", form.qgrid.N}}},
                            {"pN", form.pN},
                            {"P", form.P},
                            {"values", form.values}};
            else if constexpr (std::is_same_v<T, Truncated>)
                return json{{"kind", "truncated"},
                            {"inner", spec_to_json(*form.inner)},
                            {"r", form.profile.r},
                            {"eps", form.profile.eps},
                            {"shape", shape_to_string(form.profile.shape)}};
            else
                return json{{"kind", "sheared"},
                            {"inner", spec_to_json(*form.inner)},
                            {"g", field_to_json(*form.g)}};
        },
        spec.form);
}

SpecPtr load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    json j;
    in >> j;
    return spec_from_json(j);
}

std::string spec_digest(const HamiltonianSpec& spec) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](double x) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(double(spec.form.index()));
    const int n = spec.dim();
    mix(double(n));
    const double pvals[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    const TorusGrid grid(n, 16);
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        const Vec q = grid.node(k);
        for (double p0 : pvals) {
            if (n == 1) {
                mix(eval_h(spec, q, Vec(p0)));
            } else {
                for (double p1 : pvals) mix(eval_h(spec, q, Vec(p0, p1)));
            }
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

json effective_to_json(const EffectiveHamiltonian& eff) {
    return json{{"p", eff.p},          {"value", eff.value},
                {"lower", eff.lower},  {"upper", eff.upper},
                {"method", eff.method}, {"spec_digest", eff.spec_digest},
                {"max_gap", eff.max_gap}, {"convex_ok", eff.convex_ok}};
}

namespace {

void csv_rows(std::ostream& os, const std::vector<double>& x,
              const std::vector<double>& v, const std::vector<double>& lo,
              const std::vector<double>& hi) {
    os << std::setprecision(17);
    for (std::size_t i = 0; i < x.size(); ++i)
        os << x[i] << ',' << v[i] << ',' << lo[i] << ',' << hi[i] << '\n';
}

}  // namespace

void effective_to_csv(std::ostream& os, const EffectiveHamiltonian& eff) {
    os << "p,value,lower,upper\n";
    csv_rows(os, eff.p, eff.value, eff.lower, eff.upper);
}

json beta_to_json(const BetaFunction& beta) {
    return json{{"h", beta.h},
                {"value", beta.values},
                {"sub_lo", beta.sub_lo},
                {"sub_hi", beta.sub_hi},
                {"transform_gap", beta.transform_gap}};
}

void beta_to_csv(std::ostream& os, const BetaFunction& beta) {
    os << "h,value,sub_lo,sub_hi\n";
    csv_rows(os, beta.h, beta.values, beta.sub_lo, beta.sub_hi);
}

json metrics_to_json(const MetricsReport& rep) {
    json residuals = json::object();
    for (const auto& [name, value] : rep.identity_residuals) residuals[name] = value;
    return json{{"region", rep.region},
                {"eps_sequence", rep.eps_sequence},
                {"calabi", rep.calabi},
                {"hofer_lower", rep.hofer_lower},
                {"hofer_upper", rep.hofer_upper},
                {"c_plus_inf", rep.c_plus_inf},
                {"c_minus_inf", rep.c_minus_inf},
                {"gamma_inf", rep.gamma_inf},
                {"beta0", rep.beta0},
                {"identity_residuals", residuals},
                {"volume_normalization", rep.volume_normalization},
                {"effective", effective_to_json(rep.effective)}};
}

void metrics_to_csv(std::ostream& os, const MetricsReport& rep) {
    os << "quantity,value,lower,upper\n" << std::setprecision(17);
    os << "calabi," << rep.calabi << ",,\n";
    os << "hofer," << 0.5 * (rep.hofer_lower + rep.hofer_upper) << ','
       << rep.hofer_lower << ',' << rep.hofer_upper << '\n';
    os << "c_plus_inf," << rep.c_plus_inf << ",,\n";
    os << "c_minus_inf," << rep.c_minus_inf << ",,\n";
    os << "gamma_inf," << rep.gamma_inf << ",,\n";
    os << "beta0," << rep.beta0 << ",,\n";
}

json certificate_to_json(const CounterexampleCertificate& cert) {
    return json{
        {"parameters",
         {{"n", cert.parameters.n},
          {"delta", cert.parameters.delta},
          {"C", cert.parameters.C},
          {"c", cert.parameters.c},
          {"smooth_exponent", cert.parameters.smooth_exponent}}},
        {"gamma_inf", {{"value", cert.gamma_inf},
                       {"upper", cert.gamma_inf_upper},
                       {"gap", cert.gamma_gap},
                       {"provenance", cert.gamma_provenance}}},
        {"oracle_disagreement", cert.oracle_disagreement},
        {"test_lagrangian_bound",
         {{"value", cert.test_lagrangian}, {"provenance", "analytic corrector"}}},
        {"calabi", {{"value", cert.calabi}, {"provenance", "quadrature"}}},
        {"calabi_analytic_bound",
         {{"value", cert.calabi_analytic_bound}, {"provenance", "analytic"}}},
        {"hofer_lower", cert.hofer_lower},
        {"hofer_upper", cert.hofer_upper},
        {"beta0", cert.beta0},
        {"sufficiency", cert.sufficiency},
        {"margin", cert.margin},
        {"verdict", cert.verdict},
        {"answer_flag", cert.answer_flag}};
}

}  // namespace homog
