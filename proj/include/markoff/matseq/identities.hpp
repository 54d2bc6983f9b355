#pragma once

#include <functional>
#include <string>
#include <vector>

#include "markoff/matseq/sequence.hpp"

namespace markoff::matseq {

/// LHS - RHS of an identity, one entry per scalar component (1 for scalar
/// identities, 4 for matrix identities, 3 for polynomial identities).
struct IdentityResidual {
  std::string family_id;
  int k = 0;
  std::vector<BigInt> values;

  bool is_zero() const;
  std::string to_string() const;
};

struct IdentityFamily {
  std::string id;
  std::string statement;
  /// Smallest k the identity is stated for.
  int min_k;
  /// Lowest and highest term index read, relative to k.
  int low_offset;
  int high_offset;
  std::function<std::vector<BigInt>(const MarkoffSequence&, int)> residual;
};

/// All registered families in a stable order.
const std::vector<IdentityFamily>& identity_registry();
/// Throws UnknownFamily.
const IdentityFamily& find_family(const std::string& id);

/// Evaluates family `family_id` at index k. Throws UnknownFamily, or
/// IndexOutOfRange when k is below the family's range or a needed term is missing.
IdentityResidual verify_exact_identity(const MarkoffSequence& seq, const std::string& family_id, int k);

}  // namespace markoff::matseq
