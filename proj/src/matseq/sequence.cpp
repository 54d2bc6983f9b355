#include "markoff/matseq/sequence.hpp"

#include <mutex>

#include "markoff/error.hpp"

namespace markoff::matseq {

bool SeedPair::commutes() const {
  const Mat2 lhs = x1.as_mat2() * CompanionMatrix::for_index(1).entries * x2.as_mat2();
  const Mat2 rhs = x2.as_mat2() * CompanionMatrix::for_index(2).entries * x1.as_mat2();
  return lhs == rhs;
}

std::string SeedPair::to_string() const { return "(" + x1.to_string() + ", " + x2.to_string() + ")"; }

Mat2 recurrence_product(const SymMat2& xk, int k, const SymMat2& xk1) {
  const int s = parity_sign(k);
  // L = x_k M_k = [[3a - s b, s a], [3b - s c, s b]]
  const BigInt l00 = 3 * xk.x0 - s * xk.x1;
  const BigInt l01 = s * xk.x0;
  const BigInt l10 = 3 * xk.x1 - s * xk.x2;
  const BigInt l11 = s * xk.x1;
  return {l00 * xk1.x0 + l01 * xk1.x1, l00 * xk1.x1 + l01 * xk1.x2,
          l10 * xk1.x0 + l11 * xk1.x1, l10 * xk1.x1 + l11 * xk1.x2};
}

MarkoffSequence::MarkoffSequence(SeedPair seed, int cap) : seed_(std::move(seed)), cap_(cap) {
  if (!seed_.x1.is_unimodular() || !seed_.x2.is_unimodular()) {
    throw InvariantViolation("seed matrices must have determinant 1: " + seed_.to_string());
  }
  push_locked(seed_.x1);
  push_locked(seed_.x2);
}

MarkoffSequence::MarkoffSequence(const MarkoffSequence& other) : seed_(other.seed_), cap_(other.cap_) {
  std::shared_lock lock(other.mutex_);
  terms_ = other.terms_;
}

MarkoffSequence& MarkoffSequence::operator=(const MarkoffSequence& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  seed_ = other.seed_;
  cap_ = other.cap_;
  terms_ = other.terms_;
  return *this;
}

MarkoffSequence::MarkoffSequence(MarkoffSequence&& other) noexcept
    : seed_(std::move(other.seed_)), cap_(other.cap_), terms_(std::move(other.terms_)) {}

MarkoffSequence& MarkoffSequence::operator=(MarkoffSequence&& other) noexcept {
  seed_ = std::move(other.seed_);
  cap_ = other.cap_;
  terms_ = std::move(other.terms_);
  return *this;
}

int MarkoffSequence::size() const {
  std::shared_lock lock(mutex_);
  return static_cast<int>(terms_.size());
}

const MarkoffSequence::Entry& MarkoffSequence::entry(int k) const {
  std::shared_lock lock(mutex_);
  if (k < 1 || k > static_cast<int>(terms_.size())) {
    throw IndexOutOfRange("term " + std::to_string(k) + " not materialized (have 1.." +
                          std::to_string(terms_.size()) + ")");
  }
  return terms_[static_cast<std::size_t>(k - 1)];
}

const SymMat2& MarkoffSequence::term(int k) const { return entry(k).m; }
const BigInt& MarkoffSequence::norm(int k) const { return entry(k).norm; }
double MarkoffSequence::log2_norm(int k) const { return entry(k).log2_norm; }

void MarkoffSequence::push_locked(SymMat2 m) const {
  Entry e{std::move(m), 0, 0.0};
  e.norm = e.m.norm();
  e.log2_norm = log2_abs(e.norm);
  terms_.push_back(std::move(e));
}

SymMat2 MarkoffSequence::next_term_locked() const {
  const int n = static_cast<int>(terms_.size()) + 1;  // index being produced
  const int k = n - 2;
  const SymMat2& xk = terms_[static_cast<std::size_t>(k - 1)].m;
  const SymMat2& xk1 = terms_[static_cast<std::size_t>(k)].m;
  const Mat2 prod = recurrence_product(xk, k, xk1);
  if (prod.a01 != prod.a10) {
    throw InvariantViolation("x_" + std::to_string(n) + " is asymmetric; the seed violates the commutation condition");
  }
  SymMat2 next(prod.a00, prod.a01, prod.a11);
  if (k == 1) {
    // No x_{k-1} yet: compare with the other product order instead.
    const Mat2 alt = recurrence_product(xk1, k + 1, xk);
    if (!(alt == prod)) {
      throw OracleMismatch("x_3: x_1 M_1 x_2 != x_2 M_2 x_1 for seed " + seed_.to_string());
    }
  } else {
    const SymMat2& xkm1 = terms_[static_cast<std::size_t>(k - 2)].m;
    const BigInt t = 3 * xk.x0;
    if (next.x0 != t * xk1.x0 - xkm1.x0 || next.x1 != t * xk1.x1 - xkm1.x1 ||
        next.x2 != t * xk1.x2 - xkm1.x2) {
      throw OracleMismatch("x_" + std::to_string(n) +
                           ": matrix product disagrees with 3 x_{k,0} x_{k+1} - x_{k-1}");
    }
  }
  if (!next.is_unimodular()) {
    throw InvariantViolation("x_" + std::to_string(n) + " has determinant " + to_dec(next.det()));
  }
  return next;
}

void MarkoffSequence::ensure(int k) const {
  if (k > cap_) {
    throw CapExceeded("index " + std::to_string(k) + " exceeds the sequence cap " + std::to_string(cap_));
  }
  {
    std::shared_lock lock(mutex_);
    if (static_cast<int>(terms_.size()) >= k) return;
  }
  std::scoped_lock lock(mutex_);
  while (static_cast<int>(terms_.size()) < k) push_locked(next_term_locked());
}

void MarkoffSequence::append_verified(const SymMat2& term) {
  std::scoped_lock lock(mutex_);
  const int n = static_cast<int>(terms_.size()) + 1;
  if (n > cap_) throw CapExceeded("index " + std::to_string(n) + " exceeds the sequence cap");
  if (!term.is_unimodular()) {
    throw InvariantViolation("term " + std::to_string(n) + " has determinant " + to_dec(term.det()));
  }
  SymMat2 expected = next_term_locked();
  if (!(expected == term)) {
    throw OracleMismatch("term " + std::to_string(n) + " does not follow the recurrence");
  }
  push_locked(std::move(expected));
}

const MarkoffSequence& extend_sequence(const MarkoffSequence& seq, int upto_k) {
  seq.ensure(upto_k);
  return seq;
}

}  // namespace markoff::matseq
