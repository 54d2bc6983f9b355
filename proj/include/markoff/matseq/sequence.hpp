#pragma once

#include <deque>
#include <shared_mutex>

#include "markoff/matseq/sym_mat2.hpp"

namespace markoff::matseq {

/// Two starting matrices of a sequence plus the finite-index admissibility
/// verdict computed by `assess_seed`.
struct SeedPair {
  SymMat2 x1;
  SymMat2 x2;
  bool admissible = false;
  /// First k from which X_k < X_{k+1} and X_k < (1+xi^2)|x_{k,0}| were observed; 0 if never.
  int first_valid_index = 0;

  /// x1 M_1 x2 == x2 M_2 x1, which makes x3 symmetric.
  bool commutes() const;
  std::string to_string() const;
};

/// The sequence x_1, x_2, ... with x_{k+2} = x_k M_k x_{k+1}, stored append-only
/// and extended lazily. Readers may run concurrently with `ensure`, which is the
/// single writer.
class MarkoffSequence {
 public:
  static constexpr int kDefaultCap = 40;

  explicit MarkoffSequence(SeedPair seed, int cap = kDefaultCap);
  MarkoffSequence(const MarkoffSequence& other);
  MarkoffSequence& operator=(const MarkoffSequence& other);
  MarkoffSequence(MarkoffSequence&& other) noexcept;
  MarkoffSequence& operator=(MarkoffSequence&& other) noexcept;

  const SeedPair& seed() const { return seed_; }
  int cap() const { return cap_; }
  /// Raises the largest index `ensure` may materialize.
  void set_cap(int cap) { cap_ = cap; }

  /// Number of materialized terms; terms 1..size() are available.
  int size() const;
  bool has(int k) const { return k >= 1 && k <= size(); }

  /// Materializes terms up to `k`. Each new term is produced by the matrix
  /// product and checked against an independent formula; throws
  /// OracleMismatch, InvariantViolation, or CapExceeded.
  void ensure(int k) const;

  /// Term x_k; throws IndexOutOfRange when k is not materialized.
  const SymMat2& term(int k) const;
  const BigInt& x(int k, int j) const { return term(k)[j]; }
  /// X_k = max |x_{k,j}|.
  const BigInt& norm(int k) const;
  double log2_norm(int k) const;

  /// Appends an externally supplied term (cache loading). The term is checked
  /// against the recurrence exactly as if it had been generated.
  void append_verified(const SymMat2& term);

 private:
  struct Entry {
    SymMat2 m;
    BigInt norm;
    double log2_norm;
  };

  const Entry& entry(int k) const;
  SymMat2 next_term_locked() const;
  void push_locked(SymMat2 m) const;

  SeedPair seed_;
  int cap_;
  mutable std::deque<Entry> terms_;
  mutable std::shared_mutex mutex_;
};

/// Free-function form of `seq.ensure(upto_k)`; returns `seq` for chaining.
const MarkoffSequence& extend_sequence(const MarkoffSequence& seq, int upto_k);

/// x_k M_k x_{k+1} computed with the sparse structure of M_k.
Mat2 recurrence_product(const SymMat2& xk, int k, const SymMat2& xk1);

}  // namespace markoff::matseq
