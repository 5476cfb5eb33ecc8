#pragma once

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clifft/clifford.hpp"
#include "clifft/kernels.hpp"
#include "clifft/report.hpp"

namespace clifft {

inline Json to_json(const Multivector& a) {
    Json terms = Json::array();
    for (Blade b = 0; b < a.size(); ++b) {
        if (a[b] == Complex{}) continue;
        Json idx = Json::array();
        for (int j = 0; j < a.dimension(); ++j)
            if (b & (Blade{1} << j)) idx.push_back(j + 1);
        terms.push_back({{"blade", idx}, {"re", a[b].real()}, {"im", a[b].imag()}});
    }
    return {{"m", a.dimension()}, {"terms", terms}};
}

inline Multivector multivector_from_json(const Json& j) {
    Multivector r(j.at("m").get<int>());
    for (const auto& t : j.at("terms")) {
        const auto idx = t.at("blade").get<std::vector<int>>();
        const Blade b = Multivector::blade_from_indices(r.dimension(), idx);
        r[b] += Complex(t.value("re", 0.0), t.value("im", 0.0));
    }
    return r;
}

inline Json to_json(const std::vector<KernelTerm>& terms) {
    Json a = Json::array();
    for (const auto& t : terms)
        a.push_back({{"coeff_re", t.coeff.real()},
                     {"coeff_im", t.coeff.imag()},
                     {"sqrt_pi_over_2", t.sqrt_pi_over_2},
                     {"s_power", t.s_power},
                     {"twice_order", t.order.twice()}});
    return a;
}

inline Json to_json(const KernelExpr& k) {
    return {{"m", k.m},
            {"i", k.i},
            {"sign", k.sign == KernelSign::plus ? "+" : "-"},
            {"scalar", to_json(k.scalar)},
            {"bivector", to_json(k.bivector)}};
}

inline std::vector<KernelTerm> kernel_terms_from_json(const Json& a) {
    std::vector<KernelTerm> out;
    for (const auto& t : a) {
        KernelTerm k;
        k.coeff = Complex(t.at("coeff_re").get<double>(), t.at("coeff_im").get<double>());
        k.sqrt_pi_over_2 = t.at("sqrt_pi_over_2").get<bool>();
        k.s_power = t.at("s_power").get<int>();
        if (k.s_power < 0) throw std::invalid_argument("negative s_power in kernel JSON");
        k.order = BesselOrder::from_twice(t.at("twice_order").get<int>());
        if (k.order.twice() < -1) throw std::invalid_argument("Bessel order below -1/2 in kernel JSON");
        out.push_back(k);
    }
    return canonicalize(std::move(out));
}

inline KernelExpr kernel_from_json(const Json& j) {
    KernelExpr k;
    k.m = j.at("m").get<int>();
    k.i = j.at("i").get<int>();
    const auto sign = j.at("sign").get<std::string>();
    if (sign != "+" && sign != "-") throw std::invalid_argument("kernel sign must be + or -");
    k.sign = sign == "+" ? KernelSign::plus : KernelSign::minus;
    k.scalar = kernel_terms_from_json(j.at("scalar"));
    k.bivector = kernel_terms_from_json(j.at("bivector"));
    return k;
}

// 17 significant digits, round-trip safe
inline std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

inline void write_csv_row(std::ostream& os, const std::vector<double>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    os << '\n';
}

}  // namespace clifft
