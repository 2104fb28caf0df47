// Copyright 2026 The hampure Authors
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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "hampure/core.hpp"
#include "oracles.hpp"

namespace hampure {
namespace {

TEST(Commutator, PauliAlgebra) {
  const CMatrix zx = commutator(pauli::Z(), pauli::X());
  EXPECT_EQ(zx, 2.0 * kI * pauli::Y());
  EXPECT_EQ(commutator(pauli::X(), pauli::Y()), 2.0 * kI * pauli::Z());
  EXPECT_EQ(commutator(pauli::X(), pauli::X()), CMatrix::Zero(2, 2));
}

TEST(Commutator, MatchesSchoolbookProduct) {
  Rng rng(11);
  for (int dim = 1; dim <= 9; ++dim) {
    const CMatrix a = ginibre(dim, rng);
    const CMatrix b = ginibre(dim, rng);
    EXPECT_LT((commutator(a, b) - oracle::commutator(a, b)).norm(), 1e-12 * dim);
  }
}

TEST(Commutator, RejectsMismatch) {
  EXPECT_THROW(commutator(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), DimensionError);
  EXPECT_THROW(commutator(HermitianOperator::zero(2), HermitianOperator::zero(3)), DimensionError);
}

TEST(HermitianOperator, SymmetrizesExactly) {
  Rng rng(3);
  const HermitianOperator h(ginibre(6, rng));
  EXPECT_EQ(h.matrix(), h.matrix().adjoint().eval());
}

TEST(HermitianOperator, RequireRejectsNonHermitian) {
  CMatrix m = pauli::X();
  m(0, 1) = 2.0;
  EXPECT_THROW(HermitianOperator(m, Hermiticity::require), std::invalid_argument);
  EXPECT_NO_THROW(HermitianOperator(pauli::Y(), Hermiticity::require));
}

TEST(HermitianOperator, RejectsNonFiniteAndNonSquare) {
  CMatrix m = pauli::Z();
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(HermitianOperator{m}, std::invalid_argument);
  EXPECT_THROW(HermitianOperator(CMatrix::Zero(2, 3)), DimensionError);
}

TEST(UnitaryOperator, RejectsNonUnitary) {
  EXPECT_THROW(UnitaryOperator(2.0 * CMatrix::Identity(2, 2)), NumericError);
  EXPECT_NO_THROW(UnitaryOperator(pauli::Y()));
}

TEST(DiagonalSpec, RejectsNonFinite) {
  EXPECT_THROW(DiagonalSpec(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}),
               std::invalid_argument);
}

TEST(Eigensystem, PauliZ) {
  const Eigensystem e = eig_hermitian(HermitianOperator(pauli::Z()));
  EXPECT_EQ(e.values.values(), (std::vector<double>{-1.0, 1.0}));
  EXPECT_NEAR(std::abs(e.vectors.matrix()(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors.matrix()(0, 1)), 1.0, 1e-15);
  // Largest component real positive.
  EXPECT_EQ(e.vectors.matrix()(1, 0), Complex(1.0, 0.0));
}

TEST(Eigensystem, Identity) {
  const Eigensystem e = eig_hermitian(HermitianOperator::identity(5));
  for (double v : e.values.values()) EXPECT_NEAR(v, 1.0, 1e-15);
  EXPECT_LT(unitarity_defect(e.vectors.matrix()), 1e-14);
}

TEST(Eigensystem, ReconstructsRandomInstances) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 1 + trial % 16;
    const HermitianOperator h = random_hermitian(dim, rng);
    const Eigensystem e = eig_hermitian(h);
    const CMatrix back = e.vectors.conjugate_diagonal(e.values.values()).matrix();
    ASSERT_LT((back - h.matrix()).norm(), 1e-10 * dim * std::max(1.0, h.norm())) << "dim " << dim;
    for (int k = 1; k < dim; ++k) ASSERT_LE(e.values[k - 1], e.values[k]);
  }
}

TEST(Exponential, MatchesClosedFormAndTaylor) {
  const double t = 0.7;
  const CMatrix expected = std::cos(t) * pauli::I() - kI * std::sin(t) * pauli::X();
  EXPECT_LT((expm_hermitian(HermitianOperator(pauli::X()), t) - expected).norm(), 1e-15);
  Rng rng(5);
  for (int dim = 2; dim <= 6; ++dim) {
    const HermitianOperator h = random_hermitian(dim, rng);
    EXPECT_LT((expm_hermitian(h, 1.3) - oracle::expm_taylor(h.matrix(), 1.3)).norm(), 1e-11);
  }
}

TEST(CompleteToUnitary, CanonicalRow) {
  CMatrix row = CMatrix::Zero(1, 3);
  row(0, 0) = 1.0;
  const UnitaryOperator u = complete_to_unitary(row);
  EXPECT_EQ(u.matrix().row(0), row.row(0));
  EXPECT_LT(unitarity_defect(u.matrix()), 1e-15);
}

TEST(CompleteToUnitary, PreservesInputRowsBitForBit) {
  Rng rng(8);
  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const CMatrix rows = random_unitary_haar(n, rng).matrix().topRows(k);
      const UnitaryOperator u = complete_to_unitary(rows);
      EXPECT_EQ(u.matrix().topRows(k), rows);
      EXPECT_LT(unitarity_defect(u.matrix()), 1e-12 * n);
    }
  }
}

TEST(CompleteToUnitary, RejectsNonOrthonormal) {
  CMatrix rows(2, 3);
  rows << 1, 0, 0, 1, 1, 0;
  EXPECT_THROW(complete_to_unitary(rows), std::invalid_argument);
  EXPECT_THROW(complete_to_unitary(CMatrix::Identity(3, 2)), DimensionError);
}

TEST(Haar, SecondMomentOfAnEntry) {
  // E|U_00|^2 = 1/n for Haar U(n).
  Rng rng(77);
  const int n = 4, samples = 4000;
  double mean = 0.0;
  Complex first = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CMatrix u = random_unitary_haar(n, rng).matrix();
    mean += std::norm(u(0, 0));
    first += u(0, 0);
  }
  mean /= samples;
  EXPECT_NEAR(mean, 0.25, 0.02);
  EXPECT_LT(std::abs(first / static_cast<double>(samples)), 0.05);
}

TEST(Haar, SeedReproducible) {
  EXPECT_EQ(random_unitary_haar(5, 9).matrix(), random_unitary_haar(5, 9).matrix());
  EXPECT_EQ(random_hermitian(5, 9).matrix(), random_hermitian(5, 9).matrix());
  EXPECT_NE(random_hermitian(5, 9).matrix(), random_hermitian(5, 10).matrix());
}

TEST(Projection, LinearAndInverseOfEmbed) {
  Rng rng(1);
  for (Placement pl : {Placement::top_left, Placement::bottom_right}) {
    const ProjectionConvention conv(3, 7, pl);
    const CMatrix a = ginibre(7, rng), b = ginibre(7, rng);
    const Complex alpha(0.3, -1.1), beta(2.0, 0.5);
    EXPECT_LT((project(alpha * a + beta * b, conv) - (alpha * project(a, conv) + beta * project(b, conv))).norm(),
              1e-13);
    const CMatrix blk = ginibre(3, rng);
    EXPECT_EQ(project(embed(blk, conv), conv), blk);
    EXPECT_EQ(embed(blk, conv).norm(), blk.norm());
    // P M P equals embed(project(M)).
    const CMatrix p = conv.projector();
    EXPECT_LT((p * a * p - embed(project(a, conv), conv)).norm(), 1e-14);
  }
}

TEST(Projection, BottomRightOffset) {
  const ProjectionConvention conv(2, 5, Placement::bottom_right);
  EXPECT_EQ(conv.offset(), 3);
  EXPECT_EQ(conv.projector().trace(), Complex(2.0, 0.0));
  EXPECT_EQ(conv.projector()(4, 4), Complex(1.0, 0.0));
}

TEST(Projection, RejectsBadShapes) {
  EXPECT_THROW(ProjectionConvention(4, 3), DimensionError);
  EXPECT_THROW(ProjectionConvention(0, 3), DimensionError);
  EXPECT_THROW(project(CMatrix::Zero(4, 4), ProjectionConvention(2, 3)), DimensionError);
  EXPECT_THROW(embed(CMatrix::Zero(3, 3), ProjectionConvention(2, 3)), DimensionError);
}

TEST(Placement, StringRoundTrip) {
  for (Placement p : {Placement::top_left, Placement::bottom_right}) {
    EXPECT_EQ(placement_from_string(to_string(p)), p);
  }
  EXPECT_THROW(placement_from_string("middle"), std::invalid_argument);
}

TEST(Kron, MatchesDefinition) {
  const CMatrix k = kron(pauli::X(), pauli::Z());
  CMatrix expected(4, 4);
  expected << 0, 0, 1, 0, 0, 0, 0, -1, 1, 0, 0, 0, 0, -1, 0, 0;
  EXPECT_EQ(k, expected);
}

}  // namespace
}  // namespace hampure
