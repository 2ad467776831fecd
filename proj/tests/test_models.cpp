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

#include <gtest/gtest.h>

#include "f2c/dense.hpp"
#include "f2c/models.hpp"
#include "f2c/trotter.hpp"

namespace f2c {
namespace {

using dense::Matrix;

// Jordan-Wigner annihilator built directly from Kronecker factors, qubit 0
// leftmost: Z x ... x Z x |0><1| x I x ... x I.
Matrix jw_annihilator(std::size_t p, std::size_t n) {
  Matrix z(2, 2), lower(2, 2), id = Matrix::Identity(2, 2);
  z << 1, 0, 0, -1;
  lower << 0, 1, 0, 0;
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t q = 0; q < n; ++q) {
    const Matrix& f = q < p ? z : (q == p ? lower : id);
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
    }
    out = next;
  }
  return out;
}

Matrix traceless(const Matrix& m) {
  const auto d = m.rows();
  return m - (m.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Models, FermiHubbardMatchesDenseSecondQuantization) {
  const std::size_t sites = 3, n = 6;
  const double t = 1.3, u = 2.1;
  std::vector<Matrix> c;
  for (std::size_t p = 0; p < n; ++p) c.push_back(jw_annihilator(p, n));
  const auto d = std::size_t{1} << n;
  const Matrix id = Matrix::Identity(d, d);
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t j = 0; j + 1 < sites; ++j) {
    for (std::size_t s = 0; s < 2; ++s) {
      const auto a = 2 * j + s, b = 2 * j + 2 + s;
      h += -t * (c[a].adjoint() * c[b] + c[b].adjoint() * c[a]);
    }
  }
  for (std::size_t j = 0; j < sites; ++j) {
    const Matrix nu = c[2 * j].adjoint() * c[2 * j];
    const Matrix nd = c[2 * j + 1].adjoint() * c[2 * j + 1];
    h += u * (nu - 0.5 * id) * (nd - 0.5 * id);
  }
  const Hamiltonian model = fermi_hubbard_1d(sites, t, u);
  EXPECT_EQ(model.n_qubits(), n);
  EXPECT_LT(max_abs(dense::hamiltonian_matrix(model) - traceless(h)), 1e-12);
}

TEST(Models, FermiHubbardTermStructure) {
  const Hamiltonian h = fermi_hubbard_1d(4, 1.0, 4.0);
  const TermSplit parts = split(h);
  // Two spin species, three bonds, XZX and YZY per hop.
  // The symmetric interaction carries no single-site Z terms.
  EXPECT_EQ(parts.free.size(), 12u);
  for (const auto& t : parts.free) EXPECT_EQ(t.string.weight(), 3u);
  for (const auto& t : parts.residual) EXPECT_EQ(t.string.weight(), 2u);
  EXPECT_EQ(parts.residual.size(), 4u);
  for (const auto& t : parts.residual) EXPECT_DOUBLE_EQ(t.coeff, 1.0);  // U / 4
}

TEST(Models, HeisenbergChainAndLattice) {
  const Hamiltonian chain = heisenberg_1d(4, 1.0, 0.5, -0.25);
  ASSERT_EQ(chain.terms().size(), 9u);
  EXPECT_EQ(chain.terms()[0].string.str(), "XXII");
  EXPECT_EQ(chain.terms()[1].string.str(), "YYII");
  EXPECT_EQ(chain.terms()[2].string.str(), "ZZII");
  EXPECT_EQ(chain.terms()[2].coeff, -0.25);
  const TermSplit parts = split(chain);
  EXPECT_EQ(parts.free.size(), 6u);
  EXPECT_EQ(parts.residual.size(), 3u);

  const Hamiltonian lattice = heisenberg_2d(2, 3, 1.0, 1.0, 1.0);
  EXPECT_EQ(lattice.n_qubits(), 6u);
  EXPECT_EQ(lattice.terms().size(), 3u * 7u);  // 4 horizontal and 3 vertical bonds
  EXPECT_EQ(lattice.terms()[3].string.str(), "XIIXII");  // first vertical bond
  EXPECT_THROW(heisenberg_1d(1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(heisenberg_2d(1, 3, 1, 1, 1), std::invalid_argument);
}

TEST(Models, TJMatchesDenseSpinOperators) {
  const std::size_t sites = 2, n = 4;
  const double t = 0.8, jex = 1.7;
  std::vector<Matrix> c;
  for (std::size_t p = 0; p < n; ++p) c.push_back(jw_annihilator(p, n));
  const auto d = std::size_t{1} << n;
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t s = 0; s < 2; ++s) {
    h += -t * (c[s].adjoint() * c[2 + s] + c[2 + s].adjoint() * c[s]);
  }
  auto spin = [&](std::size_t site, int axis) {
    // S^a = 1/2 sum_{st} c+_s sigma^a_st c_t
    const Matrix& up = c[2 * site];
    const Matrix& dn = c[2 * site + 1];
    const std::complex<double> i(0, 1);
    switch (axis) {
      case 0: return Matrix(0.5 * (up.adjoint() * dn + dn.adjoint() * up));
      case 1: return Matrix(0.5 * (-i * up.adjoint() * dn + i * dn.adjoint() * up));
      default: return Matrix(0.5 * (up.adjoint() * up - dn.adjoint() * dn));
    }
  };
  auto occ = [&](std::size_t site) {
    return Matrix(c[2 * site].adjoint() * c[2 * site] + c[2 * site + 1].adjoint() * c[2 * site + 1]);
  };
  Matrix ss = Matrix::Zero(d, d);
  for (int a = 0; a < 3; ++a) ss += spin(0, a) * spin(1, a);
  h += jex * (ss - 0.25 * occ(0) * occ(1));
  EXPECT_LT(max_abs(dense::hamiltonian_matrix(tj_1d(sites, t, jex)) - traceless(h)), 1e-12);
}

TEST(Models, NoIdentityTermsSurvive) {
  for (const auto& h : {fermi_hubbard_1d(3, 1, 2), tj_1d(3, 1, 0.5)}) {
    for (const auto& t : h.terms()) EXPECT_FALSE(t.string.is_identity());
  }
}

}  // namespace
}  // namespace f2c
