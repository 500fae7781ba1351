#include "otalign/types.hpp"

#include <cmath>

namespace otalign {

int TokenSequence::valid_count() const {
  int n = 0;
  for (uint8_t m : mask) n += (m != 0);
  return n;
}

std::vector<int> TokenSequence::valid_indices() const {
  std::vector<int> idx;
  idx.reserve(mask.size());
  for (int i = 0; i < static_cast<int>(mask.size()); ++i)
    if (mask[i]) idx.push_back(i);
  return idx;
}

TokenSequence make_sequence(Matrix embeddings, std::string language_id,
                            int semantic_id) {
  TokenSequence seq;
  seq.mask.assign(static_cast<size_t>(embeddings.rows()), 1);
  seq.embeddings = std::move(embeddings);
  seq.language_id = std::move(language_id);
  seq.semantic_id = semantic_id;
  return seq;
}

void check_token_sequence(const TokenSequence& seq) {
  if (static_cast<int>(seq.mask.size()) != seq.length())
    throw ValidationError("token sequence: mask length does not match embedding rows");
  if (seq.valid_count() == 0)
    throw ValidationError("token sequence: no valid tokens");
  if (!seq.embeddings.allFinite())
    throw ValidationError("token sequence: non-finite embedding entries");
}

void check_parallel_pair(const ParallelPair& pair) {
  if (pair.first.semantic_id != pair.second.semantic_id)
    throw ValidationError("parallel pair: semantic ids differ");
  if (pair.first.language_id == pair.second.language_id)
    throw ValidationError("parallel pair: language ids coincide");
}

}  // namespace otalign
