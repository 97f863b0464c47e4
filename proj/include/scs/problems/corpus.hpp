#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace scs {

inline constexpr int kUnkId = 0;
inline constexpr std::string_view kUnkSymbol = "<unk>";

/// Character-level token stream. Symbols are UTF-8 code points (stray bytes
/// become single-byte symbols); id 0 is reserved for out-of-vocabulary text.
struct Corpus {
  std::vector<int> ids;
  std::vector<std::string> symbols;
  std::unordered_map<std::string, int> index;

  std::size_t vocab_size() const { return symbols.size(); }
  std::size_t size() const { return ids.size(); }

  std::vector<int> encode(std::string_view text) const;
  std::string decode(std::span<const int> ids) const;
};

std::vector<std::string> split_utf8(std::string_view text);

/// Keeps the max_vocab - 1 most frequent symbols (ties broken by byte order);
/// everything else maps to the unknown id. Throws on empty text or
/// max_vocab == 0.
Corpus build_corpus(std::string_view text, std::size_t max_vocab);

/// Reads a UTF-8 text file. Throws with the path in the message when the
/// file is missing, unreadable or empty.
Corpus load_corpus(const std::filesystem::path& path, std::size_t max_vocab);

/// Golden record of a tokenisation: "#tokens\tN", "#vocab\tV", then one
/// "symbol TAB id" line per vocabulary entry. Tab, newline, carriage return
/// and backslash in symbols are written as \t, \n, \r and \\.
struct VocabFixture {
  std::size_t tokens = 0;
  std::vector<std::pair<std::string, int>> entries;
};

void write_vocab_fixture(const Corpus& corpus, std::ostream& out);
VocabFixture read_vocab_fixture(std::istream& in);
VocabFixture fixture_of(const Corpus& corpus);

struct BatchSpec {
  std::size_t batch = 16;
  std::size_t seq_len = 32;
  std::uint64_t seed = 0;

  void validate() const;
};

/// B windows of T tokens; targets are the inputs shifted by one. Both are
/// row-major [B, T].
struct TokenBatch {
  std::size_t batch = 0;
  std::size_t seq_len = 0;
  std::vector<int> inputs;
  std::vector<int> targets;
};

/// Number of valid window starts, size - seq_len.
std::size_t window_count(const Corpus& corpus, std::size_t seq_len);

TokenBatch make_batch(const Corpus& corpus, std::span<const std::size_t> starts, std::size_t seq_len);

/// Endless stream of batches with window starts drawn uniformly (with
/// replacement) from the valid range.
class BatchStream {
 public:
  BatchStream(const Corpus& corpus, BatchSpec spec);

  TokenBatch next();
  /// Starts used by the most recent batch.
  const std::vector<std::size_t>& last_starts() const { return starts_; }

 private:
  const Corpus* corpus_;
  BatchSpec spec_;
  std::uint64_t drawn_ = 0;
  std::vector<std::size_t> starts_;
};

}  // namespace scs
