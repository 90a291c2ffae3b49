#include "epn/symbols.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace epn {

std::vector<Rational> BoxedSymbol::diagonal() const {
    std::vector<Rational> d;
    d.reserve(length);
    for (int i = 1; i <= length; ++i) d.push_back(shift + scale * (2 * i - 1 - length));
    return d;
}

std::string BoxedSymbol::box_label() const {
    std::string s;
    for (const auto& v : diagonal()) {
        if (!s.empty()) s += ",";
        s += to_string(v);
    }
    return s;
}

bool component_less(const BoxedSymbol& a, const BoxedSymbol& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.scale < b.scale;
}

std::string Decomposition::partition() const {
    std::string s;
    for (const auto& c : components) {
        if (!s.empty()) s += "+";
        s += std::to_string(c.length);
    }
    return s;
}

std::string Decomposition::label() const {
    std::string s;
    for (const auto& c : components) {
        if (!s.empty()) s += ",";
        s += std::to_string(c.length) + "x" + to_string(c.scale);
    }
    return s;
}

std::vector<int> diagonal_set(int n) {
    std::vector<int> d;
    d.reserve(n);
    for (int i = 1; i <= n; ++i) d.push_back(2 * i - 1 - n);
    return d;
}

namespace {

// Remove the largest remaining element M, try every block c*{1-n,...,n-1}
// whose top entry c*(n-1) equals M and which fits in the remaining set,
// recurse on the rest.  Scales come out integral (parity of D(N) forces it).
void enumerate_rec(std::set<int>& remaining, std::vector<BoxedSymbol>& stack,
                   std::vector<Decomposition>& out, int total) {
    if (remaining.empty()) {
        Decomposition dec{total, stack};
        std::sort(dec.components.begin(), dec.components.end(), component_less);
        out.push_back(std::move(dec));
        return;
    }
    const int m = *remaining.rbegin();
    for (int step = 1; step <= m; ++step) { // step = n - 1, c = m / step
        if (m % step != 0) continue;
        const int c = m / step;
        const int n = step + 1;
        std::vector<int> block;
        block.reserve(n);
        bool fits = true;
        for (int i = 1; i <= n; ++i) {
            int entry = c * (2 * i - 1 - n);
            if (!remaining.count(entry)) { fits = false; break; }
            block.push_back(entry);
        }
        if (!fits) continue;
        for (int e : block) remaining.erase(e);
        stack.push_back(BoxedSymbol{n, Rational(c), Rational(0)});
        enumerate_rec(remaining, stack, out, total);
        stack.pop_back();
        for (int e : block) remaining.insert(e);
    }
}

std::vector<std::vector<int>> decomposition_key(const Decomposition& d) {
    std::vector<std::vector<int>> key;
    for (const auto& c : d.components)
        key.push_back({-c.length, static_cast<int>(numerator(c.scale).convert_to<long>())});
    return key;
}

} // namespace

std::vector<Decomposition> enumerate_decompositions(int n, bool anomalous_only) {
    if (n < 2) throw std::domain_error("enumerate_decompositions: N must be >= 2");
    std::set<int> remaining;
    for (int v : diagonal_set(n)) remaining.insert(v);
    std::vector<BoxedSymbol> stack;
    std::vector<Decomposition> out;
    enumerate_rec(remaining, stack, out, n);
    std::sort(out.begin(), out.end(), [](const Decomposition& a, const Decomposition& b) {
        return decomposition_key(a) < decomposition_key(b);
    });
    if (anomalous_only)
        std::erase_if(out, [](const Decomposition& d) { return d.K() == 1; });
    return out;
}

long count_scenarios(int n) {
    return static_cast<long>(enumerate_decompositions(n, false).size());
}

namespace {

// Half-representation grammar for even N = 2J: decompose {1, 3, ..., 2J-1}
// into blocks B(j,k) = {(2i-1)(2k-1) : i = 1..j}.
long count_even_rec(std::set<int>& remaining) {
    if (remaining.empty()) return 1;
    const int m = *remaining.rbegin();
    long total = 0;
    for (int w = 1; w <= m; w += 2) { // w = 2k-1 odd, block top (2j-1)w = m
        if (m % w != 0 || (m / w) % 2 == 0) continue;
        const int j = (m / w + 1) / 2;
        std::vector<int> block;
        bool fits = true;
        for (int i = 1; i <= j; ++i) {
            int entry = (2 * i - 1) * w;
            if (!remaining.count(entry)) { fits = false; break; }
            block.push_back(entry);
        }
        if (!fits) continue;
        for (int e : block) remaining.erase(e);
        total += count_even_rec(remaining);
        for (int e : block) remaining.insert(e);
    }
    return total;
}

// Odd N = 2J+1: the rest of {0, 1, ..., J} after the unique C(j,k) block
// through 0 is covered by G(q,r) blocks {(2p-1)r : p = 1..q}.
long count_odd_g_rec(std::set<int>& remaining) {
    if (remaining.empty()) return 1;
    const int m = *remaining.rbegin();
    long total = 0;
    for (int r = 1; r <= m; ++r) {
        if (m % r != 0 || (m / r) % 2 == 0) continue;
        const int q = (m / r + 1) / 2;
        std::vector<int> block;
        bool fits = true;
        for (int p = 1; p <= q; ++p) {
            int entry = (2 * p - 1) * r;
            if (!remaining.count(entry)) { fits = false; break; }
            block.push_back(entry);
        }
        if (!fits) continue;
        for (int e : block) remaining.erase(e);
        total += count_odd_g_rec(remaining);
        for (int e : block) remaining.insert(e);
    }
    return total;
}

} // namespace

long count_even(int j) {
    if (j < 1) throw std::domain_error("count_even: J must be >= 1");
    std::set<int> half;
    for (int i = 1; i <= j; ++i) half.insert(2 * i - 1);
    return count_even_rec(half);
}

long count_odd(int j) {
    if (j < 1) throw std::domain_error("count_odd: J must be >= 1");
    std::set<int> full;
    for (int i = 0; i <= j; ++i) full.insert(i);
    long total = 0;
    // choose the C(jj,k) block {0, k, 2k, ..., jj*k} containing 0
    for (int k = 1; k <= j; ++k) {
        for (int jj = 1; jj * k <= j; ++jj) {
            std::vector<int> block;
            bool fits = true;
            for (int i = 0; i <= jj; ++i) {
                if (!full.count(i * k)) { fits = false; break; }
                block.push_back(i * k);
            }
            if (!fits) break;
            for (int e : block) full.erase(e);
            total += count_odd_g_rec(full);
            for (int e : block) full.insert(e);
        }
    }
    return total;
}

SequenceReport sequence_report(char variant, int max_index) {
    SequenceReport rep;
    rep.variant = variant;
    switch (variant) {
        case 'a':
            if (max_index < 2) throw std::domain_error("sequence a: max index must be >= 2");
            for (int n = 2; n <= max_index; ++n) rep.values.emplace_back(n, count_scenarios(n));
            break;
        case 'b':
            if (max_index < 1) throw std::domain_error("sequence b: max index must be >= 1");
            for (int j = 1; j <= max_index; ++j) rep.values.emplace_back(j, count_even(j));
            break;
        case 'c':
            if (max_index < 1) throw std::domain_error("sequence c: max index must be >= 1");
            for (int j = 1; j <= max_index; ++j) rep.values.emplace_back(j, count_odd(j));
            break;
        default:
            throw std::domain_error("sequence variant must be one of a, b, c");
    }
    return rep;
}

std::vector<TableRow> classification_table(int n_max) {
    if (n_max < 2) throw std::domain_error("classification_table: N_max must be >= 2");
    std::vector<TableRow> rows;
    for (int n = 2; n <= n_max; ++n) {
        for (const auto& dec : enumerate_decompositions(n, true)) {
            for (int j = 0; j < dec.K(); ++j) {
                const auto& c = dec.components[j];
                rows.push_back(TableRow{n, dec.K(), dec.partition(), j + 1, c.length, c.scale,
                                        c.box_label()});
            }
        }
    }
    return rows;
}

} // namespace epn
