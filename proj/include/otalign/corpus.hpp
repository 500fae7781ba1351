#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "otalign/types.hpp"

namespace otalign {

enum class Split { train, test };

std::string split_name(Split s);
Split split_from_name(const std::string& name);

/// How one language renders the shared semantic latents.
struct LanguageSpec {
  std::string language_id;
  Matrix mixing;       // dim x latent_dim, full column rank
  Vector offset;       // dim; the injected ground-truth language bias
  double noise_sigma = 0.0;
  int min_len = 1;
  int max_len = 1;
};

/// One semantic identity; its latent is shared across all languages.
struct SemanticItem {
  int semantic_id = 0;
  Vector latent;
};

struct CorpusConfig {
  int languages = 5;           // trained languages
  int holdout_languages = 2;   // test-split-only languages
  int items = 64;              // semantic classes
  int dim = 16;
  int latent_dim = 8;
  double noise_sigma = 0.1;
  // One trained language gets this larger sigma, modelling a harder
  // low-resource condition.
  double low_resource_noise_sigma = 0.3;
  double jitter_sigma = 0.3;   // per-token latent jitter, centered per utterance
  double offset_scale = 1.5;   // magnitude of per-language offsets
  double mixing_perturbation = 0.35;  // per-language deviation from the shared map
  int min_len = 10;
  int max_len = 20;
  double test_fraction = 0.25;
};

struct Corpus {
  std::vector<LanguageSpec> languages;
  std::vector<SemanticItem> items;
  std::vector<Split> item_split;  // indexed like items
  // keyed by (semantic_id, language_id); holdout languages only have
  // test-split utterances
  std::map<std::pair<int, std::string>, TokenSequence> utterances;
  uint64_t seed = 0;
  std::set<std::string> holdout_languages;

  bool is_holdout(const std::string& language_id) const {
    return holdout_languages.count(language_id) > 0;
  }
  std::vector<std::string> trained_language_ids() const;
  std::vector<std::string> all_language_ids() const;
  std::vector<int> item_ids(Split split) const;
  const TokenSequence& utterance(int semantic_id,
                                 const std::string& language_id) const;
  const TokenSequence* find_utterance(int semantic_id,
                                      const std::string& language_id) const;

  bool operator==(const Corpus& other) const;
};

/// Deterministic corpus generation: token = mixing * (latent + jitter)
/// + offset + noise, with the per-utterance jitter centered so pooling
/// recovers mixing * latent + offset exactly in the noiseless case.
Corpus generate(const CorpusConfig& config, uint64_t seed);

/// Same pipeline with caller-supplied language specs (tests pass identity
/// mixing / zero sigma here).
Corpus generate_with_specs(std::vector<LanguageSpec> specs,
                           std::set<std::string> holdout,
                           const CorpusConfig& config, uint64_t seed);

/// Versioned line-oriented text format; round-trips bit-exactly.
void save(const Corpus& corpus, const std::string& path);
Corpus load(const std::string& path);

enum class PairingStrategy { random_pairwise, anchor_frozen, anchor_trained };

PairingStrategy pairing_from_name(const std::string& name);
std::string pairing_name(PairingStrategy s);

struct PairFlags {
  bool first_trainable = true;   // OT gradient flows into the first sequence
  bool second_trainable = true;
};

struct PairedExample {
  ParallelPair pair;
  PairFlags flags;
};

/// One training item with its per-language utterances.
struct ItemGroup {
  int semantic_id = 0;
  std::vector<const TokenSequence*> utterances;
};

/// Applies the pairing strategy to a batch of item groups.
///   random_pairwise: one uniformly drawn unordered language pair per item,
///     both sides trainable;
///   anchor_frozen / anchor_trained: every non-anchor language paired with
///     the anchor (anchor first); frozen stops OT gradients on the anchor.
std::vector<PairedExample> make_pairing(const std::vector<ItemGroup>& batch,
                                        PairingStrategy strategy,
                                        const std::string& anchor_language,
                                        Rng& rng);

// Seeded epoch stream over the train split. Epochs replay identically for
// a fixed seed; holdout languages never appear.
class BatchStream {
 public:
  BatchStream(const Corpus& corpus, int batch_size, uint64_t seed,
              PairingStrategy strategy, std::string anchor_language);

  /// Next batch of paired examples, cycling epochs.
  std::vector<PairedExample> next();

  int batches_per_epoch() const;

 private:
  void start_epoch();

  const Corpus* corpus_;
  int batch_size_;
  uint64_t seed_;
  PairingStrategy strategy_;
  std::string anchor_;
  std::vector<int> train_items_;
  std::vector<int> order_;
  size_t cursor_ = 0;
  Rng rng_;
};

}  // namespace otalign
