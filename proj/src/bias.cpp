#include "otalign/bias.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace otalign {

void BiasTable::add(LanguageBias bias) {
  if (entries_.count(bias.language_id))
    throw ValidationError("bias table: duplicate language '" + bias.language_id + "'");
  entries_.emplace(bias.language_id, std::move(bias));
}

const LanguageBias* BiasTable::find(const std::string& language_id) const {
  auto it = entries_.find(language_id);
  return it == entries_.end() ? nullptr : &it->second;
}

void BiasTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("bias table: cannot write '" + path + "'");
  for (const auto& [id, entry] : entries_) {
    if (id.find_first_of(" \t\n") != std::string::npos)
      throw ValidationError("bias table: language id contains whitespace: '" + id + "'");
    out << id << ' ' << entry.sample_count;
    for (int i = 0; i < entry.bias.size(); ++i)
      out << ' ' << fmt_g(entry.bias[i], 17);
    out << '\n';
  }
  if (!out) throw ValidationError("bias table: write failed for '" + path + "'");
}

BiasTable BiasTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("bias table: cannot read '" + path + "'");
  BiasTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    LanguageBias entry;
    if (!(ss >> entry.language_id >> entry.sample_count))
      throw ValidationError("bias table: parse error at line " + std::to_string(line_no));
    std::vector<double> values;
    double v;
    while (ss >> v) values.push_back(v);
    if (values.empty() || entry.sample_count < 1)
      throw ValidationError("bias table: malformed record at line " + std::to_string(line_no));
    entry.bias = Eigen::Map<const Vector>(values.data(), static_cast<long>(values.size()));
    table.add(std::move(entry));
  }
  return table;
}

Vector pool(const TokenSequence& seq) {
  const auto idx = seq.valid_indices();
  if (idx.empty()) throw ValidationError("pool: sequence has no valid tokens");
  Vector sum = Vector::Zero(seq.dim());
  for (int i : idx) sum += seq.embeddings.row(i).transpose();
  return sum / static_cast<double>(idx.size());
}

LanguageBias estimate_bias(std::span<const TokenSequence> utterances,
                           const std::string& language_id) {
  if (utterances.empty())
    throw ValidationError("estimate_bias: empty utterance list");
  Vector sum = Vector::Zero(utterances.front().dim());
  for (const auto& seq : utterances) {
    if (seq.language_id != language_id)
      throw ValidationError("estimate_bias: mixed languages ('" + seq.language_id +
                            "' in a '" + language_id + "' corpus)");
    sum += pool(seq);
  }
  LanguageBias out;
  out.language_id = language_id;
  out.sample_count = static_cast<long>(utterances.size());
  out.bias = sum / static_cast<double>(utterances.size());
  return out;
}

TokenSequence compensate(const TokenSequence& seq, const LanguageBias& bias) {
  if (seq.language_id != bias.language_id)
    throw ValidationError("compensate: language mismatch ('" + seq.language_id +
                          "' vs bias for '" + bias.language_id + "')");
  if (seq.dim() != bias.bias.size())
    throw ValidationError("compensate: dim mismatch");
  TokenSequence out = seq;
  for (int i = 0; i < seq.length(); ++i)
    if (seq.mask[i]) out.embeddings.row(i) -= bias.bias.transpose();
  return out;
}

TokenSequence compensate_with_table(const TokenSequence& seq,
                                    const BiasTable& table,
                                    std::ostream* warn) {
  if (const LanguageBias* bias = table.find(seq.language_id))
    return compensate(seq, *bias);
  if (warn)
    *warn << "warning: no bias entry for language '" << seq.language_id
          << "', applying zero bias\n";
  return seq;
}

}  // namespace otalign
