#pragma once

// Boxed diagonal labels and the exhaustive enumeration of direct-sum
// decompositions of the full diagonal set D(N) = {1-N, 3-N, ..., N-1}
// into scaled centered blocks c * {1-n, 3-n, ..., n-1}, n >= 2.

#include "epn/rational.hpp"

#include <string>
#include <vector>

namespace epn {

/// One equidistant, centrally antisymmetric component label.
struct BoxedSymbol {
    int length = 2;        // component dimension n >= 2
    Rational scale = 1;    // weight c > 0
    Rational shift = 0;    // EPN energy offset (0 for centered components)

    /// The diagonal multiset { shift + scale*(2i - 1 - length) : i = 1..length }.
    std::vector<Rational> diagonal() const;

    /// "-3,-1,1,3" style label of the diagonal.
    std::string box_label() const;

    friend bool operator==(const BoxedSymbol&, const BoxedSymbol&) = default;
};

/// Canonical component order: descending length, then ascending scale.
bool component_less(const BoxedSymbol& a, const BoxedSymbol& b);

/// A K-plet of disjoint centered components partitioning D(N).
struct Decomposition {
    int total_dimension = 0;
    std::vector<BoxedSymbol> components; // canonically sorted, shifts all 0

    int K() const { return static_cast<int>(components.size()); }

    /// Partition R(N), e.g. "4+3".
    std::string partition() const;

    /// CLI label grammar "n1xc1,n2xc2,...", e.g. "4x2,3x2".
    std::string label() const;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Full diagonal set D(N), ascending.
std::vector<int> diagonal_set(int n);

/// All partitions of D(N) into admissible blocks, canonically ordered.
/// With anomalous_only the trivial K=1 decomposition is dropped.
std::vector<Decomposition> enumerate_decompositions(int n, bool anomalous_only = false);

/// a(N): number of eligible scenarios, trivial one included.
long count_scenarios(int n);

/// b(J) = a(2J), via the half-representation grammar on {1, 3, ..., 2J-1}.
long count_even(int j);

/// c(J) = a(2J+1), via the half-representation grammar on {0, 1, ..., J}.
long count_odd(int j);

struct SequenceReport {
    char variant = 'a'; // 'a', 'b' or 'c'
    std::vector<std::pair<int, long>> values;
};

SequenceReport sequence_report(char variant, int max_index);

/// One classification-table row (one component of one anomalous decomposition).
struct TableRow {
    int n = 0;             // matrix dimension N
    int k = 0;             // clusterization index of the decomposition
    std::string partition; // R(N)
    int j = 0;             // component index, 1-based
    int nj = 0;            // component dimension
    Rational cj;           // component scale
    std::string tao_label; // boxed diagonal of the component
};

/// Anomalous decompositions for every N in [2, n_max], one row per component.
std::vector<TableRow> classification_table(int n_max);

} // namespace epn
