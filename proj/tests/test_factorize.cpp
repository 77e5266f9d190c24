#include <gtest/gtest.h>

#include <lreig/factorize.hpp>
#include <lreig/fixtures.hpp>
#include <lreig/lowrank.hpp>

using namespace lreig;

TEST( TruncatedSvdFactor, UnitRankOne )
{
    RealMatrix  X = RealMatrix::Zero( 3, 3 );

    X( 0, 0 ) = 1;

    const auto  tf = truncated_svd_factor( X, Index( 1 ) );

    EXPECT_EQ( tf.pair.rank(), 1 );
    EXPECT_LE( ( tf.pair.A().cwiseAbs() - RealMatrix( X.col( 0 ) ) ).norm(), 1e-15 );
    EXPECT_LE( ( tf.pair.B().cwiseAbs() - RealMatrix( X.row( 0 ) ) ).norm(), 1e-15 );
    EXPECT_FALSE( tf.rank_exceeds_numeric );
}

TEST( TruncatedSvdFactor, ZeroMatrix )
{
    const auto  tf = truncated_svd_factor< double >( RealMatrix::Zero( 4, 4 ) );

    EXPECT_EQ( tf.pair.rank(), 0 );
    EXPECT_EQ( tf.numeric_rank, 0 );

    const auto  res = lowrank_eig( tf.pair, true );

    EXPECT_EQ( res.count(), 0 );
}

TEST( TruncatedSvdFactor, RandomLowRankReconstruction )
{
    Rng  rng( 51 );

    const RealMatrix  G = random_matrix< double >( 20, 4, rng );
    const RealMatrix  H = random_matrix< double >( 4, 20, rng );
    const RealMatrix  X = G * H;
    const auto        tf = truncated_svd_factor( X, Index( 4 ) );

    EXPECT_LE( ( X - tf.pair.A() * tf.pair.B() ).norm(), 1e-12 * X.norm() );
    EXPECT_EQ( tf.numeric_rank, 4 );
    EXPECT_EQ( numeric_rank( tf.pair.A() ), 4 );
    EXPECT_EQ( numeric_rank( tf.pair.B() ), 4 );
}

TEST( TruncatedSvdFactor, RoundTripBound )
{
    Rng  rng( 52 );

    for ( int  trial = 0; trial < 200; ++trial )
    {
        const Index       N = 2 + trial % 39;
        const Index       k = 1 + trial % std::min< Index >( N, 6 );
        const RealMatrix  X = random_matrix< double >( N, k, rng ) * random_matrix< double >( k, N, rng ) +
                              1e-3 * random_matrix< double >( N, N, rng );

        // truncate below the true rank of the perturbed matrix
        const Index       keep = std::max< Index >( 1, k - 1 );
        const auto        tf   = truncated_svd_factor( X, keep );
        const RealVector  s    = svd( X ).sigma;

        ASSERT_LE( ( X - tf.pair.A() * tf.pair.B() ).norm(), s.tail( N - keep ).norm() * ( 1 + 1e-12 ) + 1e-13 * X.norm() );
        ASSERT_NEAR( tf.discarded, s.tail( N - keep ).norm(), 1e-12 * X.norm() );
    }
}

TEST( TruncatedSvdFactor, RankAboveNumericRankIsFlagged )
{
    Rng               rng( 53 );
    const RealMatrix  X  = random_matrix< double >( 10, 2, rng ) * random_matrix< double >( 2, 10, rng );
    const auto        tf = truncated_svd_factor( X, Index( 4 ) );

    EXPECT_TRUE( tf.rank_exceeds_numeric );
    EXPECT_EQ( tf.numeric_rank, 2 );
    EXPECT_EQ( tf.pair.rank(), 4 );

    EXPECT_THROW( truncated_svd_factor( X, Index( 11 ) ), InvalidArgument );
    EXPECT_THROW( truncated_svd_factor< double >( RealMatrix( 3, 4 ) ), DimensionError );
}

TEST( SymmetricFactor, Examples )
{
    RealMatrix  X = RealMatrix::Zero( 3, 3 );

    X( 0, 0 ) = 2;
    X( 1, 1 ) = -3;

    const auto  F = symmetric_factor( X );

    ASSERT_EQ( F.rank(), 2 );
    EXPECT_DOUBLE_EQ( F.Stilde()( 0, 0 ), 2 );
    EXPECT_DOUBLE_EQ( F.Stilde()( 1, 1 ), -3 );
    EXPECT_LE( ( F.Atilde().cwiseAbs() - RealMatrix( RealMatrix::Identity( 3, 2 ) ) ).norm(), 1e-15 );

    const auto  I = symmetric_factor< double >( RealMatrix::Identity( 2, 2 ) );

    EXPECT_EQ( I.Stilde(), RealMatrix( RealMatrix::Identity( 2, 2 ) ) );
    EXPECT_LE( ( I.Atilde().transpose() * I.Atilde() - RealMatrix::Identity( 2, 2 ) ).norm(), 1e-15 );
}

TEST( SymmetricFactor, RandomReconstruction )
{
    Rng  rng( 54 );

    for ( int  trial = 0; trial < 30; ++trial )
    {
        const RealMatrix  G = random_matrix< double >( 15, 3, rng );
        RealMatrix        D = RealMatrix::Zero( 3, 3 );

        D( 0, 0 ) = 1.5;
        D( 1, 1 ) = -2;
        D( 2, 2 ) = trial % 2 == 0 ? 0.7 : -0.7;

        RealMatrix  X = G * D * G.transpose();

        X = ( X + X.transpose() ).eval() / 2;

        const auto  F = symmetric_factor( X );

        EXPECT_EQ( F.rank(), 3 );
        EXPECT_LE( ( F.Atilde() * F.Stilde() * F.Atilde().transpose() - X ).norm(), 1e-11 * X.norm() );
        EXPECT_LE( hermitian_defect( F.Stilde() ), 1e-13 );
    }
}

TEST( SymmetricFactor, AsymmetricInputIsRejected )
{
    RealMatrix  X( 2, 2 );

    X << 1, 2, 3, 4;
    EXPECT_THROW( symmetric_factor( X ), InvalidArgument );
}

TEST( RankReduce, FullRankUnchanged )
{
    Rng                         rng( 55 );
    const FactorPair< double >  F( random_matrix< double >( 12, 3, rng ), random_matrix< double >( 3, 12, rng ) );
    const auto                  G = rank_reduce( F );

    EXPECT_EQ( G.A(), F.A() );
    EXPECT_EQ( G.B(), F.B() );
}

TEST( RankReduce, DuplicatedColumn )
{
    Rng         rng( 56 );
    RealMatrix  A = random_matrix< double >( 12, 4, rng );

    A.col( 3 ) = A.col( 1 );

    const FactorPair< double >  F( A, random_matrix< double >( 4, 12, rng ) );
    const auto                  G = rank_reduce( F );

    EXPECT_EQ( G.rank(), 3 );
    EXPECT_LE( ( G.A() * G.B() - F.A() * F.B() ).norm(), 1e-11 * F.norm_scale() );

    const auto  H = rank_reduce( G );

    EXPECT_EQ( H.A(), G.A() );
    EXPECT_EQ( H.B(), G.B() );
}

TEST( RankReduce, RankOneFromTwoCopies )
{
    RealVector  a( 5 ), b( 5 );

    a << 1, -2, 0, 3, 1;
    b << 0, 1, 1, -1, 2;

    RealMatrix  A( 5, 2 ), B( 2, 5 );

    A << a, a;
    B << b.transpose(), b.transpose();

    const auto  G = rank_reduce( FactorPair< double >( A, B ) );

    EXPECT_EQ( G.rank(), 1 );
    EXPECT_LE( ( G.A() * G.B() - 2 * a * b.transpose() ).norm(), 1e-13 * a.norm() * b.norm() );
}

TEST( RankReduce, NeverIncreasesRankAndPreservesProduct )
{
    Rng  rng( 57 );

    for ( int  trial = 0; trial < 100; ++trial )
    {
        const Index  N = 6 + trial % 20;
        const Index  r = 1 + trial % 5;
        const Index  k = 1 + trial % r;

        // product of rank k with inner dimension r
        const ComplexMatrix  A = random_matrix< complex_t >( N, k, rng ) * random_matrix< complex_t >( k, r, rng );
        const ComplexMatrix  B = random_matrix< complex_t >( r, N, rng );

        const FactorPair< complex_t >  F( A, B );
        const auto                     G = rank_reduce( F );

        ASSERT_LE( G.rank(), r );
        ASSERT_EQ( G.rank(), k );
        ASSERT_LE( ( G.A() * G.B() - A * B ).norm(), 1e-11 * F.norm_scale() );
    }
}
