// Copyright 2026 The nestnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/rational.hpp>

namespace nestnet {

// Exact arithmetic for path-length averages and load objectives. All spec'd
// quantities fit comfortably in 64 bits (n <= 2^20 vertices, loads < 2^20).
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

inline std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator() << '/' << r.denominator();
  return os.str();
}

// Parses "p/q" or a bare integer.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)),
                  std::stoll(s.substr(slash + 1)));
}

// ----------------------------------------------------------------------------
// Error taxonomy. The CLI maps Error subclasses to exit code 2; anything else
// (bad flags etc.) is a usage error.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Raised when a source-destination pair has more shortest paths than the
// caller's cap. Truncating silently would change the optimum, so this is
// always a hard error.
class PathExplosion : public Error {
 public:
  PathExplosion(int src, int dst, long long count, long long cap)
      : Error("pair (" + std::to_string(src) + "," + std::to_string(dst) +
              ") has more than " + std::to_string(cap) +
              " shortest paths (count reached " + std::to_string(count) +
              "); raise the cap to proceed"),
        src(src),
        dst(dst) {}
  int src, dst;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

// ----------------------------------------------------------------------------
// Deterministic randomness. All randomized algorithms take an explicit 64-bit
// seed; derived streams (restarts, workers) use splitmix64 so that results do
// not depend on scheduling.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform draw in [0, n). Rejection keeps the draw unbiased and the stream
  // stable across platforms (std::uniform_int_distribution is not portable).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = eng_();
    while (v >= limit) v = eng_();
    return v % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Uniform in [0,1) with 53 random bits.
  double unit() { return (eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

// ----------------------------------------------------------------------------
// Deterministic parallel loop: [0, total) is split into contiguous blocks, one
// per worker. Callers must write results into per-index slots and reduce in
// index order afterwards, so the outcome never depends on the thread count.

template <typename Fn>
void parallel_for(std::size_t total, int threads, Fn&& fn) {
  if (threads <= 1 || total <= 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), total);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = total * w / workers;
    const std::size_t hi = total * (w + 1) / workers;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace nestnet
