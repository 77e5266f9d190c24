#ifndef LREIG_JORDAN_HPP
#define LREIG_JORDAN_HPP

//
// Zero-eigenvalue Jordan structure of A·B versus B·A.
//
// With A (N x r) and B (r x N) of full rank r, let 0 be an eigenvalue of B·A
// with Jordan blocks k_1..k_l. Then every such block grows by one in A·B and
// the remaining N - r - l zero eigenvalues of A·B form 1x1 blocks, i.e. A·B
// has N - r zero blocks of sizes k_1+1, ..., k_l+1, 1, ..., 1.
//
// Block sizes are measured through the Weyr characteristic
// w_j = nullity((M - λI)^j). Jordan structure is discontinuous in the data,
// so measurements refuse to answer when a singular value lies within two
// decades of the rank cutoff.
//

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <lreig/densekit.hpp>
#include <lreig/lowrank.hpp>

namespace lreig {

// relative rank cutoff used for structure decisions when the caller does not
// set one; the default SVD cutoff sits inside the rounding noise of products
inline constexpr double structure_rank_rtol = 1e-8;

// refuse if any sigma lies in [guard_low, guard_high]·cutoff
inline constexpr double guard_low  = 1e-2;
inline constexpr double guard_high = 1e2;

// largest N for which A·B is formed explicitly
inline constexpr Index  structure_max_n = 200;

struct WeyrSequence
{
    complex_t             eigenvalue{};
    // w_j = nullity((M - λI)^j), j = 1..p; strictly increasing, p is the
    // index of λ (size of the largest block). Empty if λ is not an eigenvalue.
    std::vector< Index >  nullities;
};

struct JordanStructure
{
    complex_t             eigenvalue{};
    std::vector< Index >  block_sizes;   // sorted descending

    Index geometric_multiplicity () const noexcept { return Index( block_sizes.size() ); }

    Index
    algebraic_multiplicity () const
    {
        return std::accumulate( block_sizes.begin(), block_sizes.end(), Index( 0 ) );
    }

    bool
    operator == ( const JordanStructure &  other ) const
    {
        return eigenvalue == other.eigenvalue && block_sizes == other.block_sizes;
    }
};

struct StructurePrediction
{
    JordanStructure  predicted;   // A·B at 0
    JordanStructure  source;      // B·A at 0
    Index            N = 0;
    Index            r = 0;
};

struct StructureCheck
{
    StructurePrediction  prediction;
    JordanStructure      measured;
    bool                 match = false;
};

namespace detail {

inline
double
structure_rtol ( const ToleranceConfig &  cfg )
{
    return cfg.rank_rtol.value_or( structure_rank_rtol );
}

//
// numerical rank with the guard band check
//
template < Scalar T >
Index
guarded_rank ( const Matrix< T > &  M,
               double               rtol,
               const std::string &  what )
{
    const auto  [ U, sigma, Vh ] = svd( M );

    if ( sigma.size() == 0 || sigma( 0 ) == 0.0 )
        return 0;

    const double  cutoff = rtol * sigma( 0 );

    for ( Index  i = 0; i < sigma.size(); ++i )
    {
        const double  s = sigma( i );

        if ( s >= guard_low * cutoff && s <= guard_high * cutoff )
            throw AmbiguousRankError( what + ": singular value " + num_str( s / sigma( 0 ) ) +
                                      " (relative) is too close to the rank cutoff " + num_str( rtol ) );
    }

    return numeric_rank( sigma, rtol );
}

} // namespace detail

//
// nullities of (M - λI)^j for j = 1, 2, ... until they stop growing;
// kmax bounds the number of powers formed
//
template < Scalar T >
WeyrSequence
weyr_sequence ( const Matrix< T > &      M,
                T                        lambda,
                const ToleranceConfig &  cfg  = {},
                Index                    kmax = 0 )
{
    require_square( M, "weyr_sequence input" );
    require_finite( M, "weyr_sequence input" );

    const Index  n = M.rows();

    if ( kmax <= 0 )
        kmax = n + 1;

    const double       rtol    = detail::structure_rtol( cfg );
    const Matrix< T >  shifted = M - lambda * Matrix< T >::Identity( n, n );
    Matrix< T >        power   = shifted;
    WeyrSequence       res{ complex_t( lambda ), {} };
    Index              prev    = 0;

    for ( Index  j = 1; ; ++j )
    {
        const Index  nullity = n - detail::guarded_rank( power, rtol, "weyr_sequence power " + std::to_string( j ) );

        if ( nullity == prev )
            return res;

        res.nullities.push_back( nullity );
        prev = nullity;

        if ( nullity == n )
            return res;

        if ( j >= kmax )
        {
            std::vector< std::ptrdiff_t >  partial( res.nullities.begin(), res.nullities.end() );

            throw StabilizationError( "weyr_sequence: nullities did not stabilize within " + std::to_string( kmax ) +
                                      " powers", std::move( partial ) );
        }

        power = ( power * shifted ).eval();
    }
}

//
// Segre characteristic from the Weyr characteristic: the number of blocks
// of size >= j is w_j - w_{j-1}. A trailing repeated value is accepted.
//
inline
JordanStructure
blocks_from_weyr ( const WeyrSequence &  w )
{
    const auto &  nul = w.nullities;

    std::vector< Index >  diffs;
    Index                 prev = 0;

    for ( std::size_t  j = 0; j < nul.size(); ++j )
    {
        const Index  d = nul[ j ] - prev;

        if ( d < 0 )
            throw InvalidArgument( "blocks_from_weyr: nullities must be nondecreasing" );

        if ( d == 0 && j + 1 != nul.size() )
            throw InvalidArgument( "blocks_from_weyr: nullities must increase strictly before the final value" );

        if ( ! diffs.empty() && d > diffs.back() )
            throw InvalidArgument( "blocks_from_weyr: nullity increments must be nonincreasing" );

        if ( d > 0 )
            diffs.push_back( d );

        prev = nul[ j ];
    }

    // diffs[j-1] = #blocks of size >= j
    JordanStructure  res{ w.eigenvalue, {} };

    for ( std::size_t  j = diffs.size(); j >= 1; --j )
    {
        const Index  next  = j < diffs.size() ? diffs[ j ] : 0;
        const Index  exact = diffs[ j - 1 ] - next;

        for ( Index  c = 0; c < exact; ++c )
            res.block_sizes.push_back( Index( j ) );
    }

    return res;
}

// measured structure of M at λ
template < Scalar T >
JordanStructure
measure_structure ( const Matrix< T > &      M,
                    T                        lambda,
                    const ToleranceConfig &  cfg = {} )
{
    return blocks_from_weyr( weyr_sequence( M, lambda, cfg ) );
}

//
// block diagonal Jordan matrix from (eigenvalue, block size) pairs
//
template < Scalar T >
Matrix< T >
jordan_matrix ( const std::vector< std::pair< T, Index > > &  blocks )
{
    Index  n = 0;

    for ( const auto &  [ lambda, size ] : blocks )
    {
        if ( size <= 0 )
            throw InvalidArgument( "jordan_matrix: block sizes must be positive" );
        n += size;
    }

    Matrix< T >  J   = Matrix< T >::Zero( n, n );
    Index        ofs = 0;

    for ( const auto &  [ lambda, size ] : blocks )
    {
        for ( Index  i = 0; i < size; ++i )
        {
            J( ofs + i, ofs + i ) = lambda;
            if ( i + 1 < size ) J( ofs + i, ofs + i + 1 ) = T( 1 );
        }

        ofs += size;
    }

    return J;
}

//
// zero-eigenvalue blocks of A·B from those of B·A: k_i + 1 for each block of
// B·A plus N - r - l blocks of size 1
//
inline
StructurePrediction
predict_zero_structure ( Index                    N,
                         Index                    r,
                         const JordanStructure &  ba_zero )
{
    if ( N <= 0 || r < 0 || r > N )
        throw InvalidArgument( "predict_zero_structure: need 0 <= r <= N and N > 0, got N = " + std::to_string( N ) +
                               ", r = " + std::to_string( r ) );

    const Index  l = ba_zero.geometric_multiplicity();

    if ( l > N - r )
        throw RankError( "predict_zero_structure: B·A has " + std::to_string( l ) + " zero blocks but N - r = " +
                         std::to_string( N - r ) + "; this requires rank(A) = rank(B) = r" );

    if ( ba_zero.algebraic_multiplicity() > r )
        throw InvalidArgument( "predict_zero_structure: zero blocks of B·A exceed its dimension r" );

    StructurePrediction  res;

    res.N                     = N;
    res.r                     = r;
    res.source                = ba_zero;
    res.predicted.eigenvalue  = 0.0;

    for ( Index  k : ba_zero.block_sizes )
        res.predicted.block_sizes.push_back( k + 1 );

    for ( Index  i = 0; i < N - r - l; ++i )
        res.predicted.block_sizes.push_back( 1 );

    std::sort( res.predicted.block_sizes.begin(), res.predicted.block_sizes.end(), std::greater<>() );

    return res;
}

//
// predict the zero structure of A·B from B·A and measure it on the explicit
// N x N product (desk scale only)
//
template < Scalar T >
StructureCheck
verify_structure ( const FactorPair< T > &  F,
                   const ToleranceConfig &  cfg = {} )
{
    const Index  N = F.N();
    const Index  r = F.rank();

    if ( N > structure_max_n )
        throw InvalidArgument( "verify_structure: N = " + std::to_string( N ) + " exceeds the desk-scale limit " +
                               std::to_string( structure_max_n ) );

    const double  rtol = detail::structure_rtol( cfg );
    const Index   rA   = detail::guarded_rank( F.A(), rtol, "verify_structure: rank of A" );
    const Index   rB   = detail::guarded_rank( F.B(), rtol, "verify_structure: rank of B" );

    if ( rA != r || rB != r )
        throw RankError( "verify_structure: requires rank(A) = rank(B) = r = " + std::to_string( r ) +
                         ", got rank(A) = " + std::to_string( rA ) + ", rank(B) = " + std::to_string( rB ) );

    const Matrix< T >  BA = small_product( F );
    const Matrix< T >  AB = matmul( F.A(), F.B() );

    StructureCheck  res;

    res.prediction = predict_zero_structure( N, r, measure_structure( BA, T( 0 ), cfg ) );
    res.measured   = measure_structure( AB, T( 0 ), cfg );
    res.match      = ( res.measured.block_sizes == res.prediction.predicted.block_sizes );

    return res;
}

//
// Jordan chain [a, b/κ] of M = a·b^* at 0, κ = b^*b, for b^*a = 0
//
template < Scalar T >
JordanChain< T >
rank_one_chain ( const Vector< T > &      a,
                 const Vector< T > &      b,
                 const ToleranceConfig &  cfg = {} )
{
    if ( a.size() != b.size() )
        throw DimensionError( "rank_one_chain: a and b differ in length" );

    const double  na = a.norm();
    const double  nb = b.norm();

    if ( na == 0.0 || nb == 0.0 )
        throw InvalidArgument( "rank_one_chain: a and b must be nonzero" );

    const T  inner = b.dot( a );   // b^* a

    if ( std::abs( inner ) > cfg.zero_eig_atol * na * nb )
        throw InvalidArgument( "rank_one_chain: b^T a = " + num_str( std::abs( inner ) ) +
                               " is not zero; a·b^T is not nilpotent" );

    const T  kappa = b.dot( b );

    JordanChain< T >  chain{ T( 0 ), Matrix< T >( a.size(), 2 ) };

    chain.vectors.col( 0 ) = a;
    chain.vectors.col( 1 ) = b / kappa;

    return chain;
}

} // namespace lreig

#endif // LREIG_JORDAN_HPP
