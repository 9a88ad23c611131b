#include "facloc/exact_sequence.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace facloc::exact1d {

namespace {

// Split gain expressed as 3^-A * 2^-B with nonnegative integer exponents:
// internal (j,h) -> (2j, 2h+3); external e -> (2e+1, 2). Distinct codes
// always yield distinct (A,B) since the parities of A differ by kind.
void gain_exponents(const IntervalCode& c, long& A, long& B) {
    if (c.is_external()) {
        A = 2L * c.a + 1;
        B = 2;
    } else {
        A = 2L * c.a;
        B = 2L * c.b + 3;
    }
}

BigInt scaled_inverse_gain(const IntervalCode& c) {
    long A, B;
    gain_exponents(c, A, B);
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), 3, static_cast<unsigned long>(A));
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(B));
    return v;
}

// Heap ordered so that the top element is the next code to split.
struct HeapLess {
    bool operator()(const IntervalCode& x, const IntervalCode& y) const {
        return code_order_gt(y, x);
    }
};

long phase_count(const IntervalCode& c) {
    // All intervals sharing a code are split in one run: the two externals,
    // or the 2^(h+1) internal intervals at dyadic level h of their region.
    return c.is_external() ? 2 : (2L << c.b);
}

}  // namespace

Rational IntervalCode::length() const {
    return is_external() ? pow3_2(a, 1) : pow3_2(a, b);
}

Rational IntervalCode::split_gain() const {
    long A, B;
    gain_exponents(*this, A, B);
    return pow3_2(A, B);
}

Rational IntervalCode::exponent_j() const {
    if (is_external()) return Rational(2L * a - 1, 2);
    return Rational(a);
}

Rational IntervalCode::exponent_h() const {
    if (is_external()) return Rational(-1, 2);
    return Rational(b);
}

std::array<IntervalCode, 2> IntervalCode::children() const {
    if (is_external())
        return {IntervalCode::external(a + 1), IntervalCode::internal(a + 1, 0)};
    return {IntervalCode::internal(a, b + 1), IntervalCode::internal(a, b + 1)};
}

bool code_order_gt(const IntervalCode& a, const IntervalCode& b) {
    if (a == b) return false;
    // Larger gain <=> smaller 3^A * 2^B.
    return scaled_inverse_gain(a) < scaled_inverse_gain(b);
}

std::vector<IntervalCode> enumerate_codes(int count) {
    if (count < 1) throw std::invalid_argument("enumerate_codes: count >= 1 required");
    std::vector<IntervalCode> out;
    out.reserve(count);
    std::priority_queue<IntervalCode, std::vector<IntervalCode>, HeapLess> heap;
    heap.push(IntervalCode::external(0));
    while (static_cast<int>(out.size()) < count) {
        IntervalCode c = heap.top();
        heap.pop();
        out.push_back(c);
        if (c.is_external()) {
            heap.push(IntervalCode::external(c.a + 1));
            heap.push(IntervalCode::internal(c.a + 1, 0));
        } else {
            heap.push(IntervalCode::internal(c.a, c.b + 1));
        }
    }
    return out;
}

std::vector<Rational> Partition1D::point_positions() const {
    std::vector<Rational> pts;
    pts.reserve(lengths.size() - 1);
    Rational acc = 0;
    for (size_t i = 0; i + 1 < lengths.size(); ++i) {
        acc += lengths[i];
        pts.push_back(acc);
    }
    return pts;
}

Rational Partition1D::total_length() const {
    Rational acc = 0;
    for (const Rational& l : lengths) acc += l;
    return acc;
}

ExactSequence generate_sequence(long n_max) {
    if (n_max < 1) throw std::invalid_argument("generate_sequence: n_max >= 1 required");
    ExactSequence seq;
    seq.n_max_ = n_max;
    std::priority_queue<IntervalCode, std::vector<IntervalCode>, HeapLess> heap;
    heap.push(IntervalCode::external(0));
    long k = 1;
    Rational s = make_rational(1, 4);
    while (k < n_max) {
        IntervalCode c = heap.top();
        heap.pop();
        long count = phase_count(c);
        seq.phases_.push_back(Phase{c, count, k, s});
        s -= Rational(count) * c.split_gain();
        k += count;
        if (c.is_external()) {
            heap.push(IntervalCode::external(c.a + 1));
            heap.push(IntervalCode::internal(c.a + 1, 0));
        } else {
            heap.push(IntervalCode::internal(c.a, c.b + 1));
        }
    }
    return seq;
}

Rational ExactSequence::cost(long k) const {
    if (k < 1 || k > n_max_)
        throw std::invalid_argument("ExactSequence::cost: k out of range");
    if (k == 1) return make_rational(1, 4);
    // Last phase with k_begin < k; phases are contiguous in k.
    auto it = std::upper_bound(phases_.begin(), phases_.end(), k,
                               [](long kk, const Phase& p) { return kk <= p.k_begin; });
    const Phase& p = *(it - 1);
    return p.s_begin - Rational(k - p.k_begin) * p.code.split_gain();
}

Rational ExactSequence::ratio(long k) const { return Rational(4 * k) * cost(k); }

namespace {

Rational ratio_value(const Phase& p, long k) {
    return Rational(4 * k) * (p.s_begin - Rational(k - p.k_begin) * p.code.split_gain());
}

}  // namespace

Rational ExactSequence::ratio_min(long k_lo, long k_hi) const {
    k_lo = std::max(k_lo, 1L);
    k_hi = std::min(k_hi, n_max_);
    if (k_lo > k_hi) throw std::invalid_argument("ratio_min: empty range");
    bool have = false;
    Rational best;
    if (k_lo == 1) {
        best = 1;
        have = true;
    }
    for (const Phase& p : phases_) {
        long lo = std::max(k_lo, p.k_begin + 1);
        long hi = std::min({k_hi, p.k_begin + p.count});
        if (lo > hi) continue;
        // ratio is concave in k within a phase, so the minimum is at an end.
        for (long k : {lo, hi}) {
            Rational v = ratio_value(p, k);
            if (!have || v < best) {
                best = v;
                have = true;
            }
        }
    }
    return best;
}

Rational ExactSequence::ratio_max(long k_lo, long k_hi) const {
    k_lo = std::max(k_lo, 1L);
    k_hi = std::min(k_hi, n_max_);
    if (k_lo > k_hi) throw std::invalid_argument("ratio_max: empty range");
    bool have = false;
    Rational best;
    if (k_lo == 1) {
        best = 1;
        have = true;
    }
    for (const Phase& p : phases_) {
        long lo = std::max(k_lo, p.k_begin + 1);
        long hi = std::min({k_hi, p.k_begin + p.count});
        if (lo > hi) continue;
        // Concave quadratic: check ends and the integers around the vertex.
        Rational g = p.code.split_gain();
        Rational kstar = (p.s_begin / g + Rational(p.k_begin)) / 2;
        BigInt kfloor;
        mpz_fdiv_q(kfloor.get_mpz_t(), kstar.get_num_mpz_t(), kstar.get_den_mpz_t());
        long kf = kfloor.fits_slong_p() ? kfloor.get_si() : hi;
        for (long k : {lo, hi, std::clamp(kf, lo, hi), std::clamp(kf + 1, lo, hi)}) {
            Rational v = ratio_value(p, k);
            if (!have || v > best) {
                best = v;
                have = true;
            }
        }
    }
    return best;
}

struct ExactSequence::RegionState {
    long ext_left = 0;
    long ext_right = 0;
    std::vector<long> level;  // completed dyadic level per region
    bool mid_internal = false;
    int mid_region = -1;
    long t_left = 0;
    long t_right = 0;
};

auto ExactSequence::replay(long k) const -> RegionState {
    if (k < 1 || k > n_max_)
        throw std::invalid_argument("ExactSequence: k out of range");
    RegionState st;
    for (const Phase& p : phases_) {
        if (p.k_begin >= k) break;
        long t = std::min(p.count, k - p.k_begin);
        if (p.code.is_external()) {
            int e = p.code.a;
            if (static_cast<long>(st.level.size()) <= e) st.level.resize(e + 1, 0);
            st.ext_left = e + 1;
            if (t == p.count) st.ext_right = e + 1;
        } else {
            int r = p.code.a - 1;
            if (t == p.count) {
                st.level[r] = p.code.b + 1;
            } else {
                st.mid_internal = true;
                st.mid_region = r;
                long half = p.count / 2;
                st.t_left = std::min(t, half);
                st.t_right = t - st.t_left;
            }
        }
    }
    return st;
}

CodeCounter ExactSequence::codes_at(long k) const {
    if (k < 1 || k > n_max_)
        throw std::invalid_argument("ExactSequence::codes_at: k out of range");
    CodeCounter cc;
    cc[IntervalCode::external(0)] = 2;
    for (const Phase& p : phases_) {
        if (p.k_begin >= k) break;
        long t = std::min(p.count, k - p.k_begin);
        auto it = cc.find(p.code);
        it->second -= t;
        if (it->second == 0) cc.erase(it);
        auto ch = p.code.children();
        if (p.code.is_external()) {
            cc[ch[0]] += t;
            cc[ch[1]] += t;
        } else {
            cc[ch[0]] += 2 * t;
        }
    }
    return cc;
}

Partition1D ExactSequence::partition(long k) const {
    RegionState st = replay(k);
    Partition1D part;
    part.lengths.reserve(k + 1);
    part.codes.reserve(k + 1);
    auto emit = [&part](IntervalCode c, long copies) {
        Rational len = c.length();
        for (long i = 0; i < copies; ++i) {
            part.lengths.push_back(len);
            part.codes.push_back(c);
        }
    };
    auto emit_side = [&](long r, bool left_side) {
        long level = st.level[r];
        long total = 1L << level;
        long split = 0;
        if (st.mid_internal && st.mid_region == r)
            split = left_side ? st.t_left : st.t_right;
        // Leftmost splits first: split intervals sit at the left of the run.
        emit(IntervalCode::internal(static_cast<int>(r) + 1, static_cast<int>(level) + 1), 2 * split);
        emit(IntervalCode::internal(static_cast<int>(r) + 1, static_cast<int>(level)), total - split);
    };
    emit(IntervalCode::external(static_cast<int>(st.ext_left)), 1);
    for (long r = st.ext_left - 1; r >= 0; --r) emit_side(r, true);
    for (long r = 0; r < st.ext_right; ++r) emit_side(r, false);
    emit(IntervalCode::external(static_cast<int>(st.ext_right)), 1);
    return part;
}

int ExactSequence::active_region(long k) const {
    if (k < 1 || k > n_max_)
        throw std::invalid_argument("ExactSequence::active_region: k out of range");
    if (k == 1) return -1;
    auto it = std::upper_bound(phases_.begin(), phases_.end(), k,
                               [](long kk, const Phase& p) { return kk <= p.k_begin; });
    const Phase& p = *(it - 1);
    return p.code.is_external() ? -1 : p.code.a - 1;
}

long ExactSequence::points_in_region(long k, int j) const {
    if (j < 0) throw std::invalid_argument("points_in_region: j >= 0 required");
    RegionState st = replay(k);
    long count = 0;
    if (j < st.ext_left) {
        count += (1L << st.level[j]) +
                 (st.mid_internal && st.mid_region == j ? st.t_left : 0);
    }
    if (j < st.ext_right) {
        count += (1L << st.level[j]) +
                 (st.mid_internal && st.mid_region == j ? st.t_right : 0);
    }
    return count;
}

Rational longterm_cost_uniform(long n) {
    if (n < 1) throw std::invalid_argument("longterm_cost_uniform: n >= 1 required");
    return make_rational(1, 4 * n);
}

Rational BoundaryRegion::total_length() const {
    return (left.second - left.first) + (right.second - right.first);
}

BoundaryRegion boundary_region(int j) {
    if (j < 0) throw std::invalid_argument("boundary_region: j >= 0 required");
    Rational inner = pow3_2(j, 1);       // 1/(2*3^j)
    Rational outer = pow3_2(j + 1, 1);   // 1/(2*3^(j+1))
    BoundaryRegion r;
    r.left = {outer, inner};
    r.right = {Rational(1) - inner, Rational(1) - outer};
    return r;
}

}  // namespace facloc::exact1d
