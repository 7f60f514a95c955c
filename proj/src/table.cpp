#include "lmt/table.hpp"

#include <string>

#include "lmt/errors.hpp"

namespace lmt {

FactorSignTable::FactorSignTable(std::uint64_t start, std::uint64_t count, bool with_omega)
    : start_(start), count_(count) {
    if (count == 0)
        throw InvalidArgumentError("invalid table: count must be >= 1");
    std::uint64_t words = bits::word_count(count);
    sign_.assign(words + 1, 0); // +1 guard word for shifted reads
    sf_.assign(words + 1, 0);
    if (with_omega)
        omega_.assign(count, 0);
}

void FactorSignTable::check_range(std::uint64_t n) const {
    if (!covers(n))
        throw RangeError("n=" + std::to_string(n) + " outside covered interval [" +
                         std::to_string(start_) + ", " + std::to_string(last_n()) + "]");
}

NValues FactorSignTable::query(std::uint64_t n) const {
    check_range(n);
    std::uint64_t i = n - start_;
    NValues v;
    v.n = n;
    v.lambda = bits::test(sign_words(), i) ? std::int8_t{-1} : std::int8_t{+1};
    v.square_free = bits::test(sf_words(), i);
    if (has_omega())
        v.omega = omega_[i];
    return v;
}

std::int8_t FactorSignTable::lambda_at(std::uint64_t n) const {
    check_range(n);
    return bits::test(sign_words(), n - start_) ? std::int8_t{-1} : std::int8_t{+1};
}

bool FactorSignTable::square_free_at(std::uint64_t n) const {
    check_range(n);
    return bits::test(sf_words(), n - start_);
}

std::int8_t FactorSignTable::mu_at(std::uint64_t n) const {
    check_range(n);
    std::uint64_t i = n - start_;
    if (!bits::test(sf_words(), i)) return 0;
    return bits::test(sign_words(), i) ? std::int8_t{-1} : std::int8_t{+1};
}

void FactorSignTable::validate() const {
    if (count_ == 0)
        throw InvalidArgumentError("invalid table: count must be >= 1");
    std::uint64_t words = word_count();
    if (sign_.size() != words + 1 || sf_.size() != words + 1)
        throw InvalidArgumentError("invalid table: bit storage size mismatch");
    unsigned used = static_cast<unsigned>(count_ - (words - 1) * bits::kWordBits);
    bits::Word tail_mask = ~bits::low_mask(used);
    if ((sign_[words - 1] & tail_mask) || (sf_[words - 1] & tail_mask) || sign_[words] ||
        sf_[words])
        throw InvalidArgumentError("invalid table: nonzero bits past count");
    if (!omega_.empty()) {
        if (omega_.size() != count_)
            throw InvalidArgumentError("invalid table: omega channel length != count");
        for (std::uint64_t i = 0; i < count_; ++i) {
            bool negative = bits::test(sign_words(), i);
            if (negative != (omega_[i] % 2 == 1))
                throw InvalidArgumentError("invalid table: lambda sign inconsistent with omega "
                                           "parity at n=" +
                                           std::to_string(start_ + i));
        }
    }
}

bool operator==(const FactorSignTable& a, const FactorSignTable& b) {
    if (a.start_ != b.start_ || a.count_ != b.count_ || a.has_omega() != b.has_omega())
        return false;
    std::uint64_t words = a.word_count();
    for (std::uint64_t w = 0; w < words; ++w)
        if (a.sign_[w] != b.sign_[w] || a.sf_[w] != b.sf_[w]) return false;
    return a.omega_ == b.omega_;
}

} // namespace lmt
