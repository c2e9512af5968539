#include <gtest/gtest.h>

#include "qmpower/errors.hpp"
#include "qmpower/generator.hpp"

using namespace qmpower;

TEST(Generator, FactoriesValidate) {
  EXPECT_NO_THROW(GeneratorSpec::phase().validate());
  EXPECT_NO_THROW(GeneratorSpec::kerr().validate());
  EXPECT_NO_THROW(GeneratorSpec::force(0.3).validate());
  EXPECT_NO_THROW(GeneratorSpec::real({0.2, 0.6, 0.2}).validate());
  EXPECT_EQ(GeneratorSpec::kerr().p, 4);
}

TEST(Generator, RejectsBadSpecs) {
  GeneratorSpec s;
  s.p = 0;
  s.kappas = {1.0};
  EXPECT_THROW(s.validate(), DomainError);
  s.p = 2;
  s.kappas = {0.0, 1.0};
  EXPECT_THROW(s.validate(), DomainError);
  s.kappas = {Complex(0.0, 1.0), 1.0, Complex(0.0, 1.0)};
  EXPECT_THROW(s.validate(), DomainError);  // not Hermitian
  s.kappas = {0.0, 0.0, 0.0};
  EXPECT_THROW(s.validate(), DomainError);
  EXPECT_THROW(GeneratorSpec::real({0.5, 0.2}), DomainError);
  EXPECT_THROW(GeneratorSpec::real({}), DomainError);
}

TEST(Generator, Equality) {
  EXPECT_EQ(GeneratorSpec::phase(), GeneratorSpec::real({0.0, 1.0, 0.0}));
  EXPECT_FALSE(GeneratorSpec::phase() == GeneratorSpec::kerr());
}

TEST(Generator, MatricesMatchOperators) {
  const int d = 12;
  const CMatrix a = ModeOperator::annihilation(d).matrix();
  const CMatrix ad = a.adjoint();
  EXPECT_NEAR((generator_matrix(GeneratorSpec::phase(), d).matrix() -
               ModeOperator::number(d).matrix())
                  .norm(),
              0.0, 1e-13);
  EXPECT_NEAR(
      (generator_matrix(GeneratorSpec::kerr(), d).matrix() - ad * ad * a * a)
          .norm(),
      0.0, 1e-12);
  EXPECT_NEAR((generator_matrix(GeneratorSpec::force(0.7), d).matrix() -
               ModeOperator::quadrature(0.7, d).matrix())
                  .norm(),
              0.0, 1e-13);
  EXPECT_TRUE(generator_matrix(GeneratorSpec::real({0.3, -0.2, 0.5, -0.2, 0.3}), d)
                  .is_hermitian());
}
