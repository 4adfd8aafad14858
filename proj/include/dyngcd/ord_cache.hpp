#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyngcd/polynomial.hpp"
#include "dyngcd/rank.hpp"

namespace dyngcd {

/// Loading or merging a cache computed for a different polynomial.
class CacheMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CacheFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Memo of ord(n) for one polynomial. Thread-safe: concurrent find() calls
/// share a lock, insert() and merge() take it exclusively.
class OrdCache {
 public:
  static constexpr int kVersion = 1;

  explicit OrdCache(std::string fingerprint) : fingerprint_(std::move(fingerprint)) {}
  explicit OrdCache(const IntPolynomial& F) : fingerprint_(F.canonical()) {}

  OrdCache(const OrdCache& other) : fingerprint_(other.fingerprint_) {
    std::shared_lock lock(other.mutex_);
    ranks_ = other.ranks_;
  }
  OrdCache& operator=(const OrdCache& other) {
    if (this == &other) return *this;
    std::unordered_map<u64, Rank> copy;
    {
      std::shared_lock lock(other.mutex_);
      copy = other.ranks_;
    }
    std::unique_lock lock(mutex_);
    fingerprint_ = other.fingerprint_;
    ranks_ = std::move(copy);
    return *this;
  }

  const std::string& fingerprint() const noexcept { return fingerprint_; }

  void require_polynomial(const IntPolynomial& F) const {
    if (F.canonical() != fingerprint_)
      throw CacheMismatch("ord cache is for poly=" + fingerprint_ + ", active poly is " +
                          F.canonical());
  }

  std::optional<Rank> find(u64 n) const {
    std::shared_lock lock(mutex_);
    auto it = ranks_.find(n);
    if (it == ranks_.end()) return std::nullopt;
    return it->second;
  }

  void insert(u64 n, Rank r) {
    std::unique_lock lock(mutex_);
    auto [it, fresh] = ranks_.emplace(n, r);
    if (!fresh && !(it->second == r))
      throw std::logic_error("conflicting ord entries for modulus " + std::to_string(n));
  }

  /// Union of entries. Both caches must describe the same polynomial.
  void merge(const OrdCache& other) {
    if (other.fingerprint_ != fingerprint_)
      throw CacheMismatch("cannot merge cache for poly=" + other.fingerprint_ + " into poly=" +
                          fingerprint_);
    if (&other == this) return;
    for (const auto& [n, r] : other.entries()) insert(n, r);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return ranks_.size();
  }

  /// Entries sorted by modulus.
  std::vector<std::pair<u64, Rank>> entries() const {
    std::vector<std::pair<u64, Rank>> out;
    {
      std::shared_lock lock(mutex_);
      out.assign(ranks_.begin(), ranks_.end());
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  void write_csv(std::ostream& os) const {
    os << "# poly=" << fingerprint_ << "\n# version=" << kVersion << "\np,ord\n";
    for (const auto& [n, r] : entries()) os << n << ',' << r.encode() << '\n';
  }

  static OrdCache read_csv(std::istream& is, const IntPolynomial& F) {
    std::string line;
    auto next = [&](const char* what) {
      if (!std::getline(is, line)) throw CacheFormatError(std::string("ord cache: missing ") + what);
      if (!line.empty() && line.back() == '\r') line.pop_back();
    };
    next("poly line");
    const std::string poly_prefix = "# poly=";
    if (line.rfind(poly_prefix, 0) != 0) throw CacheFormatError("ord cache: bad poly line: " + line);
    OrdCache cache(line.substr(poly_prefix.size()));
    cache.require_polynomial(F);
    next("version line");
    if (line != "# version=" + std::to_string(kVersion))
      throw CacheFormatError("ord cache: unsupported version line: " + line);
    next("header");
    if (line != "p,ord") throw CacheFormatError("ord cache: bad header: " + line);
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw CacheFormatError("ord cache: bad row: " + line);
      try {
        std::size_t used = 0;
        const u64 n = std::stoull(line.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("trailing");
        const std::string rest = line.substr(comma + 1);
        const u64 r = std::stoull(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing");
        cache.insert(n, Rank::decode(r));
      } catch (const std::logic_error&) {
        throw CacheFormatError("ord cache: bad row: " + line);
      }
    }
    return cache;
  }

  void save(const std::string& path) const {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write ord cache " + path);
    write_csv(os);
  }

  static OrdCache load(const std::string& path, const IntPolynomial& F) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read ord cache " + path);
    return read_csv(is, F);
  }

 private:
  std::string fingerprint_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<u64, Rank> ranks_;
};

}  // namespace dyngcd
