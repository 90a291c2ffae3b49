#include "epn/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace epn {

using nlohmann::json;

json matrix_to_json(const HamiltonianMatrix& h) {
    json out;
    out["n"] = h.dim();
    out["backend"] = h.is_exact() ? "exact" : "float";
    json entries = json::array();
    if (h.is_exact()) {
        const ExactMatrix& m = h.exact();
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                const ExactScalar& e = m(i, j);
                entries.push_back(json::array({to_string(e.q0()), to_string(e.q2()),
                                               to_string(e.q3()), to_string(e.q6())}));
            }
    } else {
        for (int i = 0; i < h.dim(); ++i)
            for (int j = 0; j < h.dim(); ++j) entries.push_back(h(i, j));
    }
    out["entries"] = std::move(entries);
    if (h.provenance()) out["decomposition"] = h.provenance()->label();
    return out;
}

json spectral_report_to_json(const SpectralReport& rep) {
    json out;
    json vals = json::array();
    for (const auto& e : rep.eigenvalues) vals.push_back(json::array({e.real(), e.imag()}));
    out["eigenvalues"] = std::move(vals);
    out["is_real"] = rep.is_real;
    out["min_gap"] = rep.min_gap;
    return out;
}

json jordan_to_json(const JordanStructure& js) {
    json out;
    out["eta"] = js.eta;
    out["blocks"] = js.block_sizes;
    out["K"] = js.K;
    out["rank_filtration"] = js.rank_filtration;
    return out;
}

Decomposition parse_decomposition_label(const std::string& label, int n) {
    Decomposition dec;
    dec.total_dimension = n;
    std::stringstream ss(label);
    std::string token;
    while (std::getline(ss, token, ',')) {
        auto x = token.find('x');
        if (x == std::string::npos || x == 0 || x + 1 == token.size())
            throw std::invalid_argument("malformed token '" + token + "' (expected nxc)");
        int len;
        try {
            size_t used = 0;
            len = std::stoi(token.substr(0, x), &used);
            if (used != x) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed length in token '" + token + "'");
        }
        auto scale = parse_rational(token.substr(x + 1));
        if (!scale || *scale <= 0)
            throw std::invalid_argument("malformed scale in token '" + token + "'");
        if (len < 2)
            throw std::invalid_argument("component length must be >= 2 in '" + token + "'");
        dec.components.push_back(BoxedSymbol{len, *scale, Rational(0)});
    }
    if (dec.components.empty()) throw std::invalid_argument("empty decomposition label");
    std::sort(dec.components.begin(), dec.components.end(), component_less);

    std::multiset<Rational> collected;
    for (const auto& comp : dec.components)
        for (const auto& v : comp.diagonal()) {
            if (collected.count(v))
                throw std::invalid_argument("component diagonals overlap at " + to_string(v));
            collected.insert(v);
        }
    std::multiset<Rational> expected;
    for (int v : diagonal_set(n)) expected.insert(Rational(v));
    if (collected != expected)
        throw std::invalid_argument("union of component diagonals is not D(" + std::to_string(n) +
                                    ") for label '" + label + "'");
    return dec;
}

std::string classification_table_csv(const std::vector<TableRow>& rows) {
    std::string out = "N,K,partition,j,n_j,c_j,label\n";
    for (const auto& r : rows)
        out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + r.partition + "," +
               std::to_string(r.j) + "," + std::to_string(r.nj) + "," + to_string(r.cj) + ",\"" +
               r.tao_label + "\"\n";
    return out;
}

std::string classification_table_text(const std::vector<TableRow>& rows) {
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "%3s %3s %-10s %3s %4s %5s  %s\n", "N", "K", "R(N)", "j",
                  "N_j", "c_j", "TAO_j label");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%3d %3d %-10s %3d %4d %5s  [%s]\n", r.n, r.k,
                      r.partition.c_str(), r.j, r.nj, to_string(r.cj).c_str(),
                      r.tao_label.c_str());
        out += buf;
    }
    return out;
}

} // namespace epn
