#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace subsetminer {

// Deterministic RNG used everywhere a seed appears in a file format or CLI
// flag. mt19937_64 is fully specified by the standard; the bounded draw below
// avoids std::uniform_int_distribution, whose output is implementation
// defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [0, 1).
  double unit();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// Runs fn(i) for every i in [0, n), split into contiguous chunks across at
// most `jobs` threads. fn must only touch state owned by index i; the first
// exception thrown by any chunk is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

std::string sha256_hex(std::string_view data);

// Incremental SHA-256 for digesting multi-part inputs (corpus trees).
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  void update(std::string_view data);
  std::string hex_digest();

 private:
  void* ctx_;
};

std::string read_file(const std::filesystem::path& path);

// Writes content to a temporary file in the same directory and renames it
// over the target, so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, std::string_view content);

bool valid_utf8(std::string_view text);

// Fixed-point decimal formatting, C locale semantics ('.' separator).
std::string format_fixed(double value, int decimals);

std::vector<std::string> split_on(std::string_view text, char sep);

}  // namespace subsetminer
