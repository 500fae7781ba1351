#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otalign/common.hpp"

namespace otalign {

/// A variable-length sequence of token embeddings with a validity mask.
/// Rows of `embeddings` are tokens; `mask[i] != 0` marks token i as valid.
struct TokenSequence {
  Matrix embeddings;           // length x dim
  std::vector<uint8_t> mask;   // length entries
  std::string language_id;
  int semantic_id = -1;

  int length() const { return static_cast<int>(embeddings.rows()); }
  int dim() const { return static_cast<int>(embeddings.cols()); }

  int valid_count() const;
  std::vector<int> valid_indices() const;
};

/// Builds a sequence with an all-valid mask.
TokenSequence make_sequence(Matrix embeddings, std::string language_id,
                            int semantic_id);

/// Checks the basic invariants: mask length matches, at least one valid
/// token, all embedding entries finite. Throws ValidationError.
void check_token_sequence(const TokenSequence& seq);

/// Two sequences in different languages sharing one semantic identity.
struct ParallelPair {
  TokenSequence first;
  TokenSequence second;
};

void check_parallel_pair(const ParallelPair& pair);

}  // namespace otalign
