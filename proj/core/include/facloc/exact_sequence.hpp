#pragma once

#include <array>
#include <map>
#include <vector>

#include "facloc/rational.hpp"

namespace facloc::exact1d {

enum class IntervalKind { Internal, External };

/// Code of one interval of the partition of [0,1] generated by repeated
/// optimal single-point insertion under the uniform measure.
///
/// Internal intervals carry integer exponents (j >= 1, h >= 0) and have
/// length 3^-j * 2^-h. External intervals (the two touching the boundary)
/// are parameterized by depth e >= 0 with length 3^-e / 2; their published
/// half-integer exponent pair is (e - 1/2, -1/2).
struct IntervalCode {
    IntervalKind kind = IntervalKind::Internal;
    int a = 1;  // Internal: j. External: e.
    int b = 0;  // Internal: h. External: unused.

    static IntervalCode internal(int j, int h) { return {IntervalKind::Internal, j, h}; }
    static IntervalCode external(int e) { return {IntervalKind::External, e, 0}; }

    bool is_external() const { return kind == IntervalKind::External; }
    Rational length() const;
    /// Decrease of the average distance when this interval is split at its
    /// optimal point: length^2/8 for internal, length^2/3 for external.
    Rational split_gain() const;
    /// Published exponent pair (half-integers for external intervals).
    Rational exponent_j() const;
    Rational exponent_h() const;
    /// Child codes after the optimal split. External: boundary-side child
    /// first (length len/3, external), then the internal child (2*len/3).
    std::array<IntervalCode, 2> children() const;

    friend bool operator==(const IntervalCode&, const IntervalCode&) = default;
};

/// Strict total order: a precedes b iff splitting a gains strictly more.
/// Decided exactly in integer arithmetic; no two distinct codes compare equal.
bool code_order_gt(const IntervalCode& a, const IntervalCode& b);

/// First `count` codes in split order (largest gain first).
std::vector<IntervalCode> enumerate_codes(int count);

struct CodeOrder {
    bool operator()(const IntervalCode& a, const IntervalCode& b) const {
        return code_order_gt(a, b);
    }
};

/// Multiset of codes present in a partition, keyed in split order.
using CodeCounter = std::map<IntervalCode, long, CodeOrder>;

/// Ordered partition of [0,1] identified with a point configuration.
struct Partition1D {
    std::vector<Rational> lengths;
    std::vector<IntervalCode> codes;

    long point_count() const { return static_cast<long>(lengths.size()) - 1; }
    /// Interior points, ascending, as exact prefix sums of the lengths.
    std::vector<Rational> point_positions() const;
    Rational total_length() const;
};

/// One run of equal-gain splits: all `count` intervals carrying `code` are
/// split consecutively (leftmost first), producing configurations
/// k_begin+1 .. k_begin+count.
struct Phase {
    IntervalCode code;
    long count;
    long k_begin;
    Rational s_begin;  // cost with k_begin points, before this phase
};

/// Trajectory of the incremental optimal sequence for the uniform measure,
/// represented by its phase schedule. All queries are exact and read-only.
class ExactSequence {
public:
    long n_max() const { return n_max_; }
    const std::vector<Phase>& phases() const { return phases_; }

    /// Cost s_k after k insertions (1 <= k <= n_max).
    Rational cost(long k) const;
    /// 4k * s_k, the ratio of the incremental cost to the batch optimum.
    Rational ratio(long k) const;
    /// Exact min/max of ratio(k) over [k_lo, k_hi].
    Rational ratio_min(long k_lo, long k_hi) const;
    Rational ratio_max(long k_lo, long k_hi) const;

    CodeCounter codes_at(long k) const;
    Partition1D partition(long k) const;

    /// Index of the nested boundary region being dyadically subdivided at
    /// step k, or -1 during boundary-interval (external) phases and at k=1.
    int active_region(long k) const;
    /// Number of points of the k-point configuration in boundary region j.
    /// Region boundary points are assigned to the lower-index region; the
    /// common endpoint 1/2 of the two components of region 0 is not counted.
    long points_in_region(long k, int j) const;

private:
    friend ExactSequence generate_sequence(long n_max);
    struct RegionState;
    RegionState replay(long k) const;

    long n_max_ = 0;
    std::vector<Phase> phases_;
};

ExactSequence generate_sequence(long n_max);

/// Batch-optimal cost 1/(4n) for the uniform measure on [0,1].
Rational longterm_cost_uniform(long n);

/// Nested boundary region j: two closed intervals
/// [1/(2*3^(j+1)), 1/(2*3^j)] and its mirror image; total length 2/3^(j+1).
struct BoundaryRegion {
    std::pair<Rational, Rational> left;
    std::pair<Rational, Rational> right;
    Rational total_length() const;
};
BoundaryRegion boundary_region(int j);

}  // namespace facloc::exact1d
