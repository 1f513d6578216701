/*
 * Copyright 2026 The scalarrepair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Exhaustive and seeded random search over repair field elements.
//
// Candidates are exponent tuples (e_1, ..., e_E), one per downloaded equation,
// in parity-major order. With normalize_first the first element is pinned to
// 1: scaling every element by one nonzero constant leaves the report unchanged.
// Best = smallest total bandwidth among feasible tuples, ties broken by the
// lexicographically smallest exponent tuple, so results do not depend on the
// number of worker threads.
//
// Random draws use std::mt19937_64 (fully specified by the C++ standard)
// seeded with SearchConfig::seed. Each exponent is drawn by rejection: take the
// next 64-bit output x, reject while x >= 2^64 - (2^64 mod N), return x mod N,
// with N = p^m - 1. Positions are drawn in tuple order.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "scalarrepair/errors.hpp"
#include "scalarrepair/repair.hpp"

namespace scalarrepair {

enum class SearchMode { Exhaustive, Random };

struct SearchConfig {
  Subpacketization sub;
  std::size_t failed = 1;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  bool normalize_first = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SearchResult {
  RepairScheme best;
  RepairReport best_report;
  std::uint64_t evaluated = 0;
  std::uint64_t feasible_count = 0;
  std::uint64_t space_size = 0;  // exhaustive tuple count, saturating
  std::uint64_t seed = 0;
  bool proven_optimal = false;
  bool fallback = false;  // nothing feasible was drawn; best is the naive scheme
};

inline constexpr std::uint64_t kMaxExhaustiveTuples = 100'000'000;

/// Number of tuples an exhaustive search visits, saturating at uint64 max.
inline std::uint64_t search_space_size(const Subpacketization& sub, bool normalize_first) {
  const std::uint64_t base = sub.code.field().group_order();
  const std::size_t free = sub.element_count() - (normalize_first ? 1 : 0);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < free; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    count *= base;
  }
  return count;
}

/// Uniform draw from [0, bound) on top of a 64-bit engine.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t reject_from = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > reject_from);
  return x % bound;
}

namespace detail {

struct Candidate {
  unsigned total = 0;  // 0: none yet
  std::vector<std::int32_t> exps;

  bool better_than(const Candidate& o) const {
    if (total == 0) return false;
    if (o.total == 0) return true;
    return total != o.total ? total < o.total : exps < o.exps;
  }
};

inline unsigned worker_count(unsigned requested, std::uint64_t work) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(work, 1)));
}

// Runs body(worker, begin, end) over contiguous slices of [0, count).
template <class Body>
void parallel_slices(unsigned workers, std::uint64_t count, Body body) {
  if (workers <= 1) {
    body(0u, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t step = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = std::min(count, w * step), e = std::min(count, b + step);
    pool.emplace_back([=, &body] { body(w, b, e); });
  }
  for (auto& t : pool) t.join();
}

inline std::vector<std::vector<Element>> unflatten(const Subpacketization& sub, std::span<const std::int32_t> exps) {
  std::vector<std::vector<Element>> el(sub.code.parities());
  for (std::size_t q = 0; q < exps.size(); ++q) el[q / sub.beta].push_back(Element::from_exponent(exps[q]));
  return el;
}

inline SearchResult finish(const SearchConfig& cfg, const Candidate& best, std::uint64_t evaluated, std::uint64_t feasible,
                           bool exhaustive) {
  std::optional<RepairScheme> scheme;
  if (best.total != 0)
    scheme.emplace(cfg.sub, cfg.failed, unflatten(cfg.sub, best.exps));
  else
    scheme.emplace(naive_scheme(cfg.sub, cfg.failed));
  RepairReport rep = gamma_ranks(*scheme);
  SearchResult out{std::move(*scheme), std::move(rep), evaluated, feasible,
                   search_space_size(cfg.sub, cfg.normalize_first), cfg.seed, exhaustive && best.total != 0,
                   best.total == 0};
  return out;
}

inline void check_config(const SearchConfig& cfg) {
  if (cfg.failed < 1 || cfg.failed > cfg.sub.code.k())
    throw Error(Errc::InvalidScheme, "failed node " + std::to_string(cfg.failed) + " is not systematic");
}

}  // namespace detail

inline SearchResult exhaustive_search(const SearchConfig& cfg) {
  detail::check_config(cfg);
  const auto& sub = cfg.sub;
  const std::uint64_t count = search_space_size(sub, cfg.normalize_first);
  if (count > kMaxExhaustiveTuples)
    throw Error(Errc::SearchSpaceTooLarge, std::to_string(sub.element_count()) + " elements over " + sub.code.field().name() +
                                               " exceed the exhaustive cap of 1e8 tuples");
  const std::size_t E = sub.element_count();
  const std::size_t offset = cfg.normalize_first ? 1 : 0;
  const std::uint32_t base = sub.code.field().group_order();

  const unsigned workers = detail::worker_count(cfg.threads, count);
  std::vector<detail::Candidate> best(workers);
  std::vector<std::uint64_t> feasible(workers, 0);

  detail::parallel_slices(workers, count, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    std::vector<std::int32_t> exps(E, 0);
    std::vector<Element> flat(E, Element::from_exponent(0));
    std::vector<Element> scratch;
    // decode begin into mixed-radix digits, most significant first
    std::uint64_t rest = begin;
    for (std::size_t q = E; q-- > offset;) {
      exps[q] = static_cast<std::int32_t>(rest % base);
      rest /= base;
    }
    for (std::uint64_t t = begin; t < end; ++t) {
      for (std::size_t q = 0; q < E; ++q) flat[q] = Element::from_exponent(exps[q]);
      const unsigned total = detail::feasible_total(sub, cfg.failed, flat, scratch);
      if (total != 0) {
        ++feasible[w];
        // enumeration is lexicographic, so only a strictly smaller total wins
        if (best[w].total == 0 || total < best[w].total) best[w] = {total, exps};
      }
      for (std::size_t q = E; q-- > offset;) {
        if (++exps[q] < static_cast<std::int32_t>(base)) break;
        exps[q] = 0;
      }
    }
  });

  detail::Candidate winner;
  std::uint64_t feasible_total = 0;
  for (unsigned w = 0; w < workers; ++w) {
    if (best[w].better_than(winner)) winner = best[w];
    feasible_total += feasible[w];
  }
  return detail::finish(cfg, winner, count, feasible_total, true);
}

inline SearchResult random_search(const SearchConfig& cfg) {
  detail::check_config(cfg);
  if (cfg.samples == 0) throw Error(Errc::InvalidScheme, "random search needs at least one sample");
  const auto& sub = cfg.sub;
  const std::size_t E = sub.element_count();
  const std::size_t offset = cfg.normalize_first ? 1 : 0;
  const std::uint32_t base = sub.code.field().group_order();

  std::mt19937_64 rng(cfg.seed);
  constexpr std::uint64_t kBatch = 4096;
  detail::Candidate winner;
  std::uint64_t feasible_total = 0;
  std::vector<std::int32_t> tuples;

  for (std::uint64_t done = 0; done < cfg.samples;) {
    const std::uint64_t n = std::min(kBatch, cfg.samples - done);
    tuples.assign(n * E, 0);
    for (std::uint64_t t = 0; t < n; ++t)
      for (std::size_t q = offset; q < E; ++q) tuples[t * E + q] = static_cast<std::int32_t>(uniform_below(rng, base));

    const unsigned workers = detail::worker_count(cfg.threads, n);
    std::vector<detail::Candidate> best(workers);
    std::vector<std::uint64_t> feasible(workers, 0);
    detail::parallel_slices(workers, n, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      std::vector<Element> flat(E);
      std::vector<Element> scratch;
      for (std::uint64_t t = begin; t < end; ++t) {
        for (std::size_t q = 0; q < E; ++q) flat[q] = Element::from_exponent(tuples[t * E + q]);
        const unsigned total = detail::feasible_total(sub, cfg.failed, flat, scratch);
        if (total == 0) continue;
        ++feasible[w];
        detail::Candidate c{total, std::vector<std::int32_t>(tuples.begin() + static_cast<std::ptrdiff_t>(t * E),
                                                             tuples.begin() + static_cast<std::ptrdiff_t>((t + 1) * E))};
        if (c.better_than(best[w])) best[w] = std::move(c);
      }
    });
    for (unsigned w = 0; w < workers; ++w) {
      if (best[w].better_than(winner)) winner = best[w];
      feasible_total += feasible[w];
    }
    done += n;
  }
  return detail::finish(cfg, winner, cfg.samples, feasible_total, false);
}

inline SearchResult run_search(const SearchConfig& cfg) {
  return cfg.mode == SearchMode::Exhaustive ? exhaustive_search(cfg) : random_search(cfg);
}

}  // namespace scalarrepair
