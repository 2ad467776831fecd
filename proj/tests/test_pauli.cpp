// Copyright 2026 The f2c Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "f2c/dense.hpp"
#include "f2c/pauli.hpp"
#include "test_util.hpp"

namespace f2c {
namespace {

using cd = std::complex<double>;
using testing::random_string;

std::vector<PauliString> strings_up_to_weight_two(std::size_t n) {
  std::vector<PauliString> out{PauliString(n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (char la : {'X', 'Y', 'Z'}) {
      PauliString p(n);
      p.set(a, la);
      out.push_back(p);
      for (std::size_t b = a + 1; b < n; ++b) {
        for (char lb : {'X', 'Y', 'Z'}) {
          PauliString q = p;
          q.set(b, lb);
          out.push_back(q);
        }
      }
    }
  }
  return out;
}

TEST(PauliString, ParseRenderRoundTrip) {
  const auto p = PauliString::parse("IXYZ");
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.str(), "IXYZ");
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_TRUE(p.x(1) && !p.z(1));
  EXPECT_TRUE(p.x(2) && p.z(2));
  EXPECT_TRUE(!p.x(3) && p.z(3));
  EXPECT_THROW(PauliString::parse("XQ"), std::invalid_argument);
}

TEST(PauliString, WideStringsSpanWords) {
  std::string letters(150, 'I');
  letters[0] = 'X';
  letters[64] = 'Y';
  letters[149] = 'Z';
  const auto p = PauliString::parse(letters);
  EXPECT_EQ(p.str(), letters);
  EXPECT_EQ(p.weight(), 3u);
  auto q = PauliString::parse(std::string(150, 'I'));
  q.set(64, 'Z');
  EXPECT_TRUE(anticommutes(p, q));
}

TEST(Multiply, XTimesYIsIZ) {
  const auto r = multiply(PauliString::parse("X"), PauliString::parse("Y"));
  EXPECT_EQ(r.phase(), cd(0, 1));
  EXPECT_EQ(r.product.str(), "Z");
}

TEST(Multiply, IdentityIsNeutral) {
  const auto p = PauliString::parse("XZYI");
  const auto r = multiply(p, PauliString(4));
  EXPECT_EQ(r.phase(), cd(1, 0));
  EXPECT_EQ(r.product, p);
}

TEST(Multiply, SquareIsIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_string(6, rng);
    const auto r = multiply(p, p);
    EXPECT_TRUE(r.product.is_identity());
    EXPECT_EQ(r.phase(), cd(1, 0));
  }
}

TEST(Multiply, MatchesDenseProduct) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_string(4, rng);
    const auto b = random_string(4, rng);
    const auto r = multiply(a, b);
    const dense::Matrix lhs = r.phase() * dense::pauli_matrix(r.product);
    const dense::Matrix rhs = dense::pauli_matrix(a) * dense::pauli_matrix(b);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14) << a.str() << " * " << b.str();
  }
}

TEST(Multiply, LengthMismatchThrows) {
  EXPECT_THROW(multiply(PauliString(2), PauliString(3)), std::invalid_argument);
  EXPECT_THROW(anticommutes(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST(Anticommutes, SmallCases) {
  EXPECT_TRUE(anticommutes(PauliString::parse("X"), PauliString::parse("Z")));
  EXPECT_FALSE(anticommutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
  EXPECT_FALSE(anticommutes(PauliString::parse("XY"), PauliString::parse("XY")));
}

TEST(Anticommutes, SymmetricAndMatchesDense) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_string(5, rng);
    const auto b = random_string(5, rng);
    EXPECT_EQ(anticommutes(a, b), anticommutes(b, a));
    EXPECT_FALSE(anticommutes(a, a));
    const auto ma = dense::pauli_matrix(a);
    const auto mb = dense::pauli_matrix(b);
    const bool dense_commutes = (ma * mb - mb * ma).cwiseAbs().maxCoeff() < 1e-12;
    EXPECT_EQ(anticommutes(a, b), !dense_commutes) << a.str() << " " << b.str();
  }
}

TEST(CommutatorNorm, Examples) {
  EXPECT_DOUBLE_EQ(commutator_norm({PauliString::parse("X"), 1.0}, {PauliString::parse("Z"), 0.5}),
                   1.0);
  EXPECT_DOUBLE_EQ(
      commutator_norm({PauliString::parse("XX"), 1.0}, {PauliString::parse("ZZ"), 1.0}), 0.0);
}

TEST(CommutatorNorm, ExhaustiveWeightTwoAgainstDense) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto strings = strings_up_to_weight_two(n);
    std::vector<dense::Matrix> mats;
    for (const auto& s : strings) mats.push_back(dense::pauli_matrix(s));
    for (std::size_t i = 0; i < strings.size(); ++i) {
      for (std::size_t j = 0; j < strings.size(); ++j) {
        const PauliTerm a{strings[i], coeff(rng)};
        const PauliTerm b{strings[j], coeff(rng)};
        const dense::Matrix c = a.coeff * b.coeff * (mats[i] * mats[j] - mats[j] * mats[i]);
        EXPECT_NEAR(commutator_norm(a, b), dense::spectral_norm(c), 1e-9)
            << strings[i].str() << " " << strings[j].str();
      }
    }
  }
}

TEST(Classify, Examples) {
  const auto z = classify(PauliString::parse("ZIII"));
  ASSERT_TRUE(z);
  EXPECT_EQ(z->a, 0u);
  EXPECT_EQ(z->b, 1u);
  const auto xzy = classify(PauliString::parse("XZY"));
  ASSERT_TRUE(xzy);
  EXPECT_EQ(xzy->a, 1u);
  EXPECT_EQ(xzy->b, 5u);
  EXPECT_FALSE(classify(PauliString::parse("ZZII")));
  EXPECT_FALSE(classify(PauliString::parse("IIII")));
  EXPECT_FALSE(classify(PauliString::parse("XIX")));   // missing Z string
  EXPECT_FALSE(classify(PauliString::parse("XZZ")));   // Z endpoint
  EXPECT_FALSE(classify(PauliString::parse("XXX")));
}

// Frozen from the dense identity P = sign * (-i) gamma_a gamma_b below.
TEST(Classify, PinnedSignTable) {
  struct Row {
    const char* s;
    std::size_t a, b;
    int sign;
  };
  const Row rows[] = {
      {"ZII", 0, 1, 1},  {"IZI", 2, 3, 1},  {"XXI", 1, 2, 1}, {"YYI", 0, 3, -1},
      {"XYI", 1, 3, 1},  {"YXI", 0, 2, -1}, {"XZY", 1, 5, 1}, {"YZX", 0, 4, -1},
      {"IXY", 3, 5, 1},
  };
  for (const auto& r : rows) {
    const auto m = classify(PauliString::parse(r.s));
    ASSERT_TRUE(m) << r.s;
    EXPECT_EQ(*m, (MajoranaBilinear{r.a, r.b, r.sign})) << r.s;
  }
}

TEST(Classify, AllFreeStringsSatisfyDenseIdentity) {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t total = 1;
    for (std::size_t q = 0; q < n; ++q) total *= 4;
    std::size_t free_count = 0;
    for (std::size_t code = 0; code < total; ++code) {
      PauliString p(n);
      std::size_t c = code;
      for (std::size_t q = 0; q < n; ++q, c /= 4) p.set(q, "IXYZ"[c % 4]);
      const auto m = classify(p);
      if (!m) continue;
      ++free_count;
      ASSERT_LT(m->a, m->b);
      const dense::Matrix rhs = double(m->sign) * cd(0, -1) * dense::majorana_matrix(m->a, n) *
                                dense::majorana_matrix(m->b, n);
      EXPECT_LT((dense::pauli_matrix(p) - rhs).cwiseAbs().maxCoeff(), 1e-12) << p.str();
    }
    // Every pair a < b of the 2n modes appears exactly once.
    EXPECT_EQ(free_count, n * (2 * n - 1)) << "n=" << n;
  }
}

TEST(Hamiltonian, ParseSingleTerm) {
  const auto h = parse_hamiltonian(R"({"n_qubits":2, "terms":[{"pauli":"XX","coeff":1.0}]})");
  EXPECT_EQ(h.n_qubits(), 2u);
  ASSERT_EQ(h.terms().size(), 1u);
  EXPECT_EQ(h.terms()[0].string.str(), "XX");
  EXPECT_EQ(h.terms()[0].coeff, 1.0);
}

TEST(Hamiltonian, ZeroSumDuplicatesDropped) {
  const auto h = parse_hamiltonian(
      R"({"n_qubits":2, "terms":[{"pauli":"ZI","coeff":0.5},{"pauli":"XX","coeff":2},)"
      R"({"pauli":"ZI","coeff":-0.5}]})");
  ASSERT_EQ(h.terms().size(), 1u);
  EXPECT_EQ(h.terms()[0].string.str(), "XX");
}

TEST(Hamiltonian, DuplicatesMergeInFirstOccurrenceOrder) {
  const auto h = parse_hamiltonian(
      R"({"n_qubits":1, "terms":[{"pauli":"Z","coeff":0.25},{"pauli":"X","coeff":1},)"
      R"({"pauli":"Z","coeff":0.5}]})");
  ASSERT_EQ(h.terms().size(), 2u);
  EXPECT_EQ(h.terms()[0].string.str(), "Z");
  EXPECT_EQ(h.terms()[0].coeff, 0.75);
  EXPECT_EQ(h.terms()[1].string.str(), "X");
}

TEST(Hamiltonian, Errors) {
  EXPECT_THROW(parse_hamiltonian(R"({"n_qubits":2, "terms":[{"pauli":"XQ","coeff":1}]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_hamiltonian(R"({"n_qubits":2, "terms":[{"pauli":"XXX","coeff":1}]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_hamiltonian(R"({"n_qubits":2, "terms":[{"pauli":"XX","coeff":1e999}]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_hamiltonian(R"({"n_qubits":2, "terms":[{"pauli":"XX"}]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_hamiltonian("{not json"), std::invalid_argument);
  EXPECT_THROW(parse_hamiltonian(R"({"n_qubits":0, "terms":[]})"), std::invalid_argument);
}

TEST(Hamiltonian, RenderParseIsByteStable) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  std::vector<PauliTerm> terms;
  for (int i = 0; i < 20; ++i) terms.push_back({random_string(5, rng), coeff(rng)});
  const Hamiltonian h(5, terms);
  const std::string text = render_hamiltonian(h);
  const Hamiltonian back = parse_hamiltonian(text);
  EXPECT_EQ(render_hamiltonian(back), text);
  ASSERT_EQ(back.terms().size(), h.terms().size());
  for (std::size_t i = 0; i < h.terms().size(); ++i) {
    EXPECT_EQ(back.terms()[i].string, h.terms()[i].string);
    EXPECT_EQ(back.terms()[i].coeff, h.terms()[i].coeff);
  }
}

TEST(Hamiltonian, FileRoundTrip) {
  const Hamiltonian h(3, {{PauliString::parse("XZY"), 0.125}, {PauliString::parse("ZII"), -1.5}});
  const auto path = testing::temp_path("pauli_roundtrip.json");
  save_hamiltonian(h, path);
  EXPECT_EQ(render_hamiltonian(load_hamiltonian(path)), render_hamiltonian(h));
  EXPECT_THROW(load_hamiltonian(testing::temp_path("does_not_exist.json")), std::runtime_error);
}

}  // namespace
}  // namespace f2c
