#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dops/factorization.hpp"
#include "dops/pipeline.hpp"
#include "dops/random.hpp"

namespace dops::testing {

using Q = Rational;

inline Q q(std::string_view text) { return parse_scalar<Q>(text); }

inline Polynomial<Q> poly(std::initializer_list<const char*> coeffs) {
  std::vector<Q> c;
  for (const auto* t : coeffs) c.push_back(q(t));
  return Polynomial<Q>(std::move(c));
}

/// Recurrence section with the same bands a_{n,n-d}..a_{n,n} on every row.
inline BandedHessenberg<Q> constant_hessenberg(Index d, const std::vector<Q>& bands, Index rows) {
  std::vector<std::vector<Q>> out;
  for (Index n = 0; n < rows; ++n) {
    const Index width = std::min(n, d) + 1;
    out.emplace_back(bands.end() - width, bands.end());
  }
  return BandedHessenberg<Q>(d, out);
}

/// Everything downstream of one random instance, built one degree past N so
/// identities hold exactly on the window N + 1 - d.
struct Instance {
  Index d;
  Index max_degree;
  BaseInstance<Q> base;
  GeronimusConfig<Q> cfg;
  std::vector<TransformLevel<Q>> levels;
  std::vector<DOPSequence<Q>> sequences;
  std::vector<BandedHessenberg<Q>> j_levels;
  BidiagonalChain<Q> chain;

  Index top() const { return max_degree + 1; }
  Index window() const { return safe_window(top(), d); }
};

/// Random instance whose levels 0..d are all regular; draws again (up to a
/// bound) when a level turns out singular.
inline Instance regular_instance(std::uint64_t seed, Index d, Index max_degree) {
  InstanceGenerator<Q> gen(seed);
  for (int attempt = 0; attempt < 50; ++attempt) {
    const Index top = max_degree + 1;
    auto j = gen.hessenberg(d, hessenberg_rows_needed(top, d));
    auto lambda = gen.unitriangular(d);
    auto cfg = gen.config(d);
    auto base = base_from_hessenberg(j, top, lambda);
    auto levels = build_all_levels(base, cfg, top);
    bool regular = true;
    for (const auto& l : levels) regular = regular && l.sequence.has_value();
    if (!regular) continue;
    auto seqs = level_sequences(levels);
    auto js = recurrence_matrices(seqs);
    auto chain = build_chain(seqs, cfg.a);
    return {d, max_degree, std::move(base), std::move(cfg), std::move(levels), std::move(seqs), std::move(js),
            std::move(chain)};
  }
  throw std::runtime_error("no regular instance for seed " + std::to_string(seed));
}

}  // namespace dops::testing
