#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "otalign/types.hpp"

namespace otalign {

/// Per-language mean of pooled utterance representations.
struct LanguageBias {
  std::string language_id;
  Vector bias;
  long sample_count = 0;
};

/// Immutable after construction; safe to share across threads.
class BiasTable {
 public:
  void add(LanguageBias bias);
  const LanguageBias* find(const std::string& language_id) const;
  const std::map<std::string, LanguageBias>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  /// Flat text table, one row per language:
  /// language_id sample_count v0 ... v{dim-1}, 17 significant digits.
  void save(const std::string& path) const;
  static BiasTable load(const std::string& path);

 private:
  std::map<std::string, LanguageBias> entries_;
};

/// Arithmetic mean of the valid-token embeddings.
Vector pool(const TokenSequence& seq);

/// Mean of pooled representations over the utterances of one language.
LanguageBias estimate_bias(std::span<const TokenSequence> utterances,
                           const std::string& language_id);

/// Subtracts the bias from every valid token; mask and metadata unchanged.
TokenSequence compensate(const TokenSequence& seq, const LanguageBias& bias);

/// Table lookup variant. A language without an entry passes through
/// unchanged (zero bias) with a warning on `warn`; this is the inference
/// path for languages unseen during bias estimation.
TokenSequence compensate_with_table(const TokenSequence& seq,
                                    const BiasTable& table,
                                    std::ostream* warn = nullptr);

}  // namespace otalign
