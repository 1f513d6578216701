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

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace scalarrepair {
namespace {

using testing::bundled;
using testing::bundled_scheme;

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::UnknownCode;
}

std::vector<Element> random_message(const CodeSpec& code, std::mt19937_64& rng) {
  std::vector<Element> msg(code.k());
  for (auto& e : msg) e = testing::random_element(code.field(), rng);
  return msg;
}

TEST(MakeSub, Examples) {
  const Subpacketization a = make_sub(bundled("rs53"), 1);
  EXPECT_EQ(a.beta, 2u);
  EXPECT_EQ(a.alpha, 4u);
  EXPECT_EQ(a.file_size, 12u);
  EXPECT_EQ(a.element_count(), 4u);
  const Subpacketization b = make_sub(bundled("rs64"), 2);
  EXPECT_EQ(b.beta, 1u);
  EXPECT_EQ(b.alpha, 2u);
  EXPECT_EQ(b.file_size, 8u);
  EXPECT_DOUBLE_EQ(b.symbol_bits(), 2.0);
  const Subpacketization c = make_sub(bundled("fb1410"), 1);
  EXPECT_EQ(c.beta, 2u);
  EXPECT_EQ(baselines(c).naive, 80u);
  EXPECT_EQ(baselines(c).cutset, 26u);
  EXPECT_EQ(baselines(a).cutset, 8u);
  EXPECT_EQ(baselines(b).cutset, 5u);
  EXPECT_EQ(error_of([] { make_sub(bundled("rs53"), 3); }), Errc::IncompatibleSubfield);
  EXPECT_EQ(error_of([] { make_sub(bundled("rs53"), 4); }), Errc::IncompatibleSubfield);
}

TEST(RepairSchemeTest, Validation) {
  const Subpacketization sub = make_sub(bundled("rs53"), 1);
  const Field& f = sub.code.field();
  EXPECT_EQ(error_of([&] { RepairScheme(sub, 0, {{f.one(), f.one()}, {f.one(), f.one()}}); }), Errc::InvalidScheme);
  EXPECT_EQ(error_of([&] { RepairScheme(sub, 4, {{f.one(), f.one()}, {f.one(), f.one()}}); }), Errc::InvalidScheme);
  EXPECT_EQ(error_of([&] { RepairScheme(sub, 1, {{f.one(), f.zero()}, {f.one(), f.one()}}); }), Errc::InvalidScheme);
  EXPECT_EQ(error_of([&] { RepairScheme(sub, 1, {{f.one()}, {f.one(), f.one()}}); }), Errc::DimensionMismatch);
  EXPECT_EQ(error_of([&] { RepairScheme(sub, 1, {{f.one(), f.one()}}); }), Errc::DimensionMismatch);
}

TEST(GammaRanks, Rs53Golden) {
  const std::vector<std::vector<unsigned>> expected{{4, 3, 3}, {3, 4, 3}, {3, 3, 4}};
  for (std::size_t node = 1; node <= 3; ++node) {
    const RepairReport rep = gamma_ranks(bundled_scheme("rs53-golden", node));
    EXPECT_EQ(rep.gammas, expected[node - 1]);
    EXPECT_TRUE(rep.feasible);
    EXPECT_EQ(rep.total_bw, 10u);
    EXPECT_EQ(rep.interference_bw, 6u);
    EXPECT_EQ(rep.naive_bw, 12u);
    EXPECT_EQ(rep.cutset_bw, 8u);
    EXPECT_DOUBLE_EQ(rep.total_bits(), 10.0);
  }
}

TEST(GammaRanks, AllOnesIsInfeasibleForRs53) {
  const Subpacketization sub = make_sub(bundled("rs53"), 1);
  const Element one = sub.code.field().one();
  const RepairReport rep = gamma_ranks(RepairScheme(sub, 1, {{one, one}, {one, one}}));
  EXPECT_FALSE(rep.feasible);
  EXPECT_EQ(rep.gammas[0], 2u);
}

TEST(GammaRanks, Rs64Table2AndFb1410Golden) {
  EXPECT_EQ(gamma_ranks(bundled_scheme("rs64-binary", 1)).gammas, (std::vector<unsigned>{4, 3, 3, 2}));
  EXPECT_EQ(gamma_ranks(bundled_scheme("rs64-binary", 4)).gammas, (std::vector<unsigned>{3, 3, 2, 4}));
  const std::vector<unsigned> totals{65, 64, 64, 64, 63, 64, 64, 65, 65, 64};
  for (std::size_t node = 1; node <= 10; ++node) {
    const RepairReport rep = gamma_ranks(bundled_scheme("fb1410-golden", node));
    EXPECT_TRUE(rep.feasible) << node;
    EXPECT_EQ(rep.total_bw, totals[node - 1]) << node;
  }
}

TEST(NaiveScheme, AlwaysFeasibleAndNeverBetterThanAlpha) {
  for (const char* name : {"rs53", "rs64", "fb1410"}) {
    const CodeSpec code = bundled(name);
    for (unsigned s = 1; s <= code.field().degree(); ++s) {
      if (code.field().degree() % s || (code.field().degree() / s) % code.parities()) continue;
      const Subpacketization sub = make_sub(code, s);
      for (std::size_t node = 1; node <= code.k(); ++node) {
        const RepairReport rep = gamma_ranks(naive_scheme(sub, node));
        EXPECT_TRUE(rep.feasible) << name << " s=" << s << " node=" << node;
        EXPECT_LE(rep.total_bw, rep.naive_bw);
      }
    }
  }
}

TEST(Bounds, FeasibleTotalsLieBetweenCutsetAndNaive) {
  std::mt19937_64 rng(8);
  for (const char* name : {"rs53", "rs64"}) {
    const CodeSpec code = bundled(name);
    const Subpacketization sub = make_sub(code, 1);
    int feasible = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const RepairScheme scheme = testing::random_scheme(sub, 1 + rng() % code.k(), rng);
      const RepairReport rep = gamma_ranks(scheme);
      for (unsigned g : rep.gammas) EXPECT_LE(g, sub.alpha);
      if (!rep.feasible) continue;
      ++feasible;
      EXPECT_GE(rep.total_bw, rep.cutset_bw);
      EXPECT_LE(rep.total_bw, rep.naive_bw);
    }
    EXPECT_GT(feasible, 0) << name;
  }
}

TEST(Scaling, GlobalScalarLeavesReportUnchanged) {
  std::mt19937_64 rng(21);
  for (const char* name : {"rs53", "rs64", "fb1410"}) {
    const CodeSpec code = bundled(name);
    const Field& f = code.field();
    const Subpacketization sub = make_sub(code, 1);
    for (int trial = 0; trial < 100; ++trial) {
      const RepairScheme scheme = testing::random_scheme(sub, 1 + rng() % code.k(), rng);
      const Element c = testing::random_nonzero(f, rng);
      auto el = scheme.elements();
      for (auto& row : el)
        for (auto& e : row) e = f.mul(e, c);
      EXPECT_EQ(gamma_ranks(RepairScheme(sub, scheme.failed(), el)), gamma_ranks(scheme));
    }
  }
}

TEST(Lift, Rs64CliqueSchemeToBinary) {
  const RepairScheme node2 = bundled_scheme("rs64-clique", 2);
  const RepairReport coarse = gamma_ranks(node2);
  EXPECT_EQ(coarse.total_bw, 6u);
  const RepairScheme lifted = lift_scheme(node2, 2);
  const Field& f = lifted.code().field();
  EXPECT_EQ(lifted.sub().s, 1u);
  EXPECT_EQ(lifted.elements(),
            (std::vector<std::vector<Element>>{{f.one(), f.pow_zeta(5)}, {f.pow_zeta(3), f.pow_zeta(8)}}));
  const RepairReport fine = gamma_ranks(lifted);
  EXPECT_EQ(fine.gammas, (std::vector<unsigned>{2, 4, 4, 2}));
  EXPECT_EQ(fine.total_bw, 12u);
  EXPECT_EQ(lift_scheme(node2, 1), node2);
  EXPECT_EQ(error_of([&] { lift_scheme(node2, 3); }), Errc::IncompatibleLift);
  EXPECT_EQ(error_of([&] { lift_scheme(node2, 0); }), Errc::IncompatibleLift);
}

TEST(Lift, ScalesEveryGammaByFactor) {
  std::mt19937_64 rng(31);
  const CodeSpec code = bundled("fb1410");
  for (unsigned s : {2u, 4u}) {
    if ((8 / s) % code.parities()) continue;
    const Subpacketization sub = make_sub(code, s);
    for (int trial = 0; trial < 50; ++trial) {
      const RepairScheme scheme = testing::random_scheme(sub, 1 + rng() % code.k(), rng);
      const RepairReport before = gamma_ranks(scheme);
      for (unsigned a = 1; a <= s; ++a) {
        if (s % a) continue;
        const RepairReport after = gamma_ranks(lift_scheme(scheme, a));
        ASSERT_EQ(after.gammas.size(), before.gammas.size());
        for (std::size_t u = 0; u < before.gammas.size(); ++u) EXPECT_EQ(after.gammas[u], a * before.gammas[u]);
        EXPECT_EQ(after.feasible, before.feasible);
      }
    }
  }
}

TEST(MatrixOracle, AgreesWithElementRanks) {
  std::mt19937_64 rng(41);
  for (const char* name : {"rs53", "rs64"}) {
    const CodeSpec code = bundled(name);
    for (unsigned s : {1u, 2u}) {
      if ((code.field().degree() / s) % code.parities()) continue;
      const Subpacketization sub = make_sub(code, s);
      for (int trial = 0; trial < 150; ++trial) {
        const RepairScheme scheme = testing::random_scheme(sub, 1 + rng() % code.k(), rng);
        const RepairReport expected = gamma_ranks(scheme);
        for (int r = 0; r < 3; ++r) {
          const MatrixScheme mat = realize_matrices(scheme, testing::random_nonzero_vector(code.field(), rng));
          EXPECT_EQ(gamma_ranks_matrix(sub, scheme.failed(), mat), expected);
        }
      }
    }
  }
}

TEST(MatrixOracle, UnitReferencePicksFirstOperatorRow) {
  const RepairScheme scheme = bundled_scheme("rs53-golden", 1);
  const Field& f = scheme.code().field();
  const MatrixScheme mat = realize_matrices(scheme, unit_reference(f));
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t j = 0; j < 2; ++j) {
      const Matrix g = f.mult_operator(scheme.elements()[l][j]).mat;
      for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(mat.matrices[l](q, j), g(0, q));
    }
}

TEST(MatrixOracle, IdentityMatricesOnParityCheckCode) {
  const Field f = testing::gf4();
  const CodeSpec code("spc", 3, 2, f, {{f.one()}, {f.one()}});
  const Subpacketization sub = make_sub(code, 1);
  const MatrixScheme mat{unit_reference(f), {Matrix::identity(2)}};
  const RepairReport rep = gamma_ranks_matrix(sub, 1, mat);
  EXPECT_EQ(rep.gammas, (std::vector<unsigned>{2, 2}));
  EXPECT_TRUE(rep.feasible);
  EXPECT_EQ(rep.total_bw, rep.naive_bw);
}

TEST(MatrixOracle, Errors) {
  const RepairScheme scheme = bundled_scheme("rs53-golden", 1);
  const Field& f = scheme.code().field();
  EXPECT_EQ(error_of([&] { realize_matrices(scheme, VectorRep(4, 0)); }), Errc::ZeroReference);
  EXPECT_EQ(error_of([&] { realize_matrices(scheme, VectorRep(3, 1)); }), Errc::DimensionMismatch);
  MatrixScheme mat = realize_matrices(scheme, unit_reference(f));
  for (std::size_t r = 0; r < 4; ++r) mat.matrices[0](r, 1) = 0;
  EXPECT_EQ(error_of([&] { gamma_ranks_matrix(scheme.sub(), 1, mat); }), Errc::InvalidMatrix);
  mat.matrices.pop_back();
  EXPECT_EQ(error_of([&] { gamma_ranks_matrix(scheme.sub(), 1, mat); }), Errc::DimensionMismatch);
}

TEST(Recover, GoldenSchemesRoundTrip) {
  std::mt19937_64 rng(51);
  struct Case {
    const char* dir;
    std::vector<std::size_t> nodes;
  };
  const std::vector<Case> cases{{"rs53-golden", {1, 2, 3}},
                                {"rs64-binary", {1, 4}},
                                {"rs64-clique", {1, 2, 3, 4}},
                                {"fb1410-golden", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}};
  for (const Case& c : cases)
    for (std::size_t node : c.nodes) {
      const RepairScheme scheme = bundled_scheme(c.dir, node);
      const RepairReport rep = gamma_ranks(scheme);
      for (int trial = 0; trial < 20; ++trial) {
        const Codeword word = encode(scheme.code(), random_message(scheme.code(), rng));
        const VectorRep ref = trial % 2 ? testing::random_nonzero_vector(scheme.code().field(), rng)
                                        : unit_reference(scheme.code().field());
        const RecoveryResult res = recover_node(word, scheme, ref);
        EXPECT_EQ(res.value, word.symbols[node - 1]) << c.dir << " node " << node;
        EXPECT_EQ(res.subfield_symbols, rep.total_bw);
        EXPECT_DOUBLE_EQ(res.bits, rep.total_bits());
        EXPECT_EQ(res.download[node - 1], 0u);
      }
    }
}

TEST(Recover, Fb1410Node5Downloads63Bits) {
  const RepairScheme scheme = bundled_scheme("fb1410-golden", 5);
  std::vector<Element> msg(10, scheme.code().field().pow_zeta(77));
  const RecoveryResult res = recover_node(encode(scheme.code(), msg), scheme);
  EXPECT_DOUBLE_EQ(res.bits, 63.0);
  for (std::size_t j = 11; j <= 14; ++j) EXPECT_EQ(res.download[j - 1], 2u);
}

TEST(Recover, Errors) {
  const Subpacketization sub = make_sub(bundled("rs53"), 1);
  const Field& f = sub.code.field();
  const RepairScheme bad(sub, 1, {{f.one(), f.one()}, {f.one(), f.one()}});
  const Codeword word = encode(sub.code, std::vector<Element>(3, f.one()));
  EXPECT_EQ(error_of([&] { recover_node(word, bad); }), Errc::InfeasibleScheme);
  const Codeword short_word{{f.one()}};
  EXPECT_EQ(error_of([&] { recover_node(short_word, bundled_scheme("rs53-golden", 1)); }), Errc::LengthMismatch);
}

}  // namespace
}  // namespace scalarrepair
