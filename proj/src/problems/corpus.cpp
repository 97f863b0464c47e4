#include "scs/problems/corpus.hpp"

#include "scs/sampling.hpp"
#include "scs/types.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>

namespace scs {
namespace {

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::string escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += s[i];
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> split_utf8(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = utf8_length(static_cast<unsigned char>(text[i]));
    if (i + len > text.size()) len = 1;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<int> Corpus::encode(std::string_view text) const {
  std::vector<int> out;
  for (const std::string& s : split_utf8(text)) {
    const auto it = index.find(s);
    out.push_back(it == index.end() ? kUnkId : it->second);
  }
  return out;
}

std::string Corpus::decode(std::span<const int> token_ids) const {
  std::string out;
  for (const int id : token_ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= symbols.size()) {
      throw std::out_of_range("decode: id " + std::to_string(id) + " outside vocabulary");
    }
    out += symbols[static_cast<std::size_t>(id)];
  }
  return out;
}

Corpus build_corpus(std::string_view text, std::size_t max_vocab) {
  if (text.empty()) throw std::invalid_argument("corpus: empty text");
  if (max_vocab == 0) throw std::invalid_argument("corpus: max vocabulary must be at least 1");
  const std::vector<std::string> chars = split_utf8(text);
  std::map<std::string, std::size_t> counts;
  for (const auto& c : chars) ++counts[c];
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  Corpus corpus;
  corpus.symbols.emplace_back(kUnkSymbol);
  const std::size_t keep = std::min(ranked.size(), max_vocab - 1);
  for (std::size_t i = 0; i < keep; ++i) {
    corpus.index.emplace(ranked[i].first, static_cast<int>(corpus.symbols.size()));
    corpus.symbols.push_back(ranked[i].first);
  }
  corpus.ids.reserve(chars.size());
  for (const auto& c : chars) {
    const auto it = corpus.index.find(c);
    corpus.ids.push_back(it == corpus.index.end() ? kUnkId : it->second);
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, std::size_t max_vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read corpus file '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("error while reading corpus file '" + path.string() + "'");
  if (text.empty()) throw std::runtime_error("corpus file '" + path.string() + "' is empty");
  return build_corpus(text, max_vocab);
}

VocabFixture fixture_of(const Corpus& corpus) {
  VocabFixture f;
  f.tokens = corpus.ids.size();
  for (std::size_t i = 0; i < corpus.symbols.size(); ++i) f.entries.emplace_back(corpus.symbols[i], static_cast<int>(i));
  return f;
}

void write_vocab_fixture(const Corpus& corpus, std::ostream& out) {
  out << "#tokens\t" << corpus.ids.size() << '\n';
  out << "#vocab\t" << corpus.symbols.size() << '\n';
  for (std::size_t i = 0; i < corpus.symbols.size(); ++i) out << escape(corpus.symbols[i]) << '\t' << i << '\n';
}

VocabFixture read_vocab_fixture(std::istream& in) {
  VocabFixture f;
  std::size_t declared_vocab = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw std::runtime_error("vocab fixture: missing tab in '" + line + "'");
    const std::string key = line.substr(0, tab);
    const std::string value = line.substr(tab + 1);
    if (key == "#tokens") {
      f.tokens = std::stoull(value);
    } else if (key == "#vocab") {
      declared_vocab = std::stoull(value);
    } else {
      f.entries.emplace_back(unescape(key), std::stoi(value));
    }
  }
  if (declared_vocab != f.entries.size()) throw std::runtime_error("vocab fixture: entry count does not match header");
  return f;
}

void BatchSpec::validate() const {
  if (batch == 0) throw std::invalid_argument("batch size must be at least 1");
  if (seq_len == 0) throw std::invalid_argument("sequence length must be at least 1");
}

std::size_t window_count(const Corpus& corpus, std::size_t seq_len) {
  if (corpus.size() <= seq_len) {
    throw std::invalid_argument("corpus of " + std::to_string(corpus.size()) + " tokens is too short for sequence length " +
                                std::to_string(seq_len));
  }
  return corpus.size() - seq_len;
}

TokenBatch make_batch(const Corpus& corpus, std::span<const std::size_t> starts, std::size_t seq_len) {
  const std::size_t windows = window_count(corpus, seq_len);
  TokenBatch b;
  b.batch = starts.size();
  b.seq_len = seq_len;
  b.inputs.reserve(starts.size() * seq_len);
  b.targets.reserve(starts.size() * seq_len);
  for (const std::size_t s : starts) {
    if (s >= windows) throw std::out_of_range("window start " + std::to_string(s) + " out of range");
    b.inputs.insert(b.inputs.end(), corpus.ids.begin() + static_cast<long>(s),
                    corpus.ids.begin() + static_cast<long>(s + seq_len));
    b.targets.insert(b.targets.end(), corpus.ids.begin() + static_cast<long>(s + 1),
                     corpus.ids.begin() + static_cast<long>(s + seq_len + 1));
  }
  return b;
}

BatchStream::BatchStream(const Corpus& corpus, BatchSpec spec) : corpus_(&corpus), spec_(spec) {
  spec_.validate();
  window_count(corpus, spec_.seq_len);
}

TokenBatch BatchStream::next() {
  starts_ = draw_batch(window_count(*corpus_, spec_.seq_len), spec_.batch, mix_seed(spec_.seed, drawn_++));
  return make_batch(*corpus_, starts_, spec_.seq_len);
}

}  // namespace scs
