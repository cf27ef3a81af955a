#include "frobstab/combinatorics.hpp"

#include <algorithm>

namespace frobstab {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

BigInt pow_int(int base, int exp) {
    if (exp < 0) throw InputError("pow_int: negative exponent");
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

BigInt binomial(long long n, long long k) {
    if (n < 0) throw InputError("binomial: n must be non-negative");
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i; // exact: acc is C(n-k+i, i) after this step
    }
    return acc;
}

BigInt alt_weighted_binomial_sum(int n) {
    if (n < 0) throw InputError("alt_weighted_binomial_sum: n must be non-negative");
    BigInt acc = 0;
    for (int j = 0; j <= n; ++j) {
        BigInt term = j * binomial(n, j);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

BoundedCompositions::BoundedCompositions(long long l, std::vector<int> bounds)
    : l_(l), bounds_(std::move(bounds)) {
    if (l_ < 0) throw InputError("bounded_compositions: l must be non-negative");
    for (int b : bounds_)
        if (b < 0) throw InputError("bounded_compositions: bounds must be non-negative");
}

BoundedCompositions::Iterator::Iterator(long long l, const std::vector<int>* bounds)
    : bounds_(bounds), cur_(bounds->size(), 0), done_(false) {
    const std::size_t m = bounds_->size();
    bound_suffix_.assign(m + 1, 0);
    for (std::size_t i = m; i-- > 0;)
        bound_suffix_[i] = bound_suffix_[i + 1] + (*bounds_)[i];
    if (l > bound_suffix_[0]) {
        done_ = true;
        return;
    }
    fill_minimal_suffix(0, l);
}

// Writes the lexicographically smallest tail of weight rem into
// positions [from, m); feasibility (rem <= bound_suffix_[from]) is the
// caller's invariant.
void BoundedCompositions::Iterator::fill_minimal_suffix(std::size_t from, long long rem) {
    const std::size_t m = bounds_->size();
    for (std::size_t i = from; i < m; ++i) {
        long long v = std::max<long long>(0, rem - bound_suffix_[i + 1]);
        cur_[i] = static_cast<int>(v);
        rem -= v;
    }
    if (rem != 0) throw InternalError("bounded_compositions: infeasible suffix fill");
}

BoundedCompositions::Iterator& BoundedCompositions::Iterator::operator++() {
    const std::size_t m = bounds_->size();
    // Successor: move one unit of tail weight into the rightmost
    // incrementable position, then re-minimize everything after it.
    long long tail = 0;
    for (std::size_t jj = m; jj-- > 1;) {
        tail += cur_[jj];
        const std::size_t j = jj - 1;
        if (cur_[j] < (*bounds_)[j] && tail > 0) {
            ++cur_[j];
            fill_minimal_suffix(j + 1, tail - 1);
            return *this;
        }
    }
    done_ = true;
    return *this;
}

BigInt count_bounded_compositions(long long l, const std::vector<int>& bounds) {
    BigInt count = 0;
    for ([[maybe_unused]] const auto& v : BoundedCompositions(l, bounds)) ++count;
    return count;
}

} // namespace frobstab
