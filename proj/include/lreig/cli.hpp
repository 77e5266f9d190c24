#ifndef LREIG_CLI_HPP
#define LREIG_CLI_HPP

//
// command-line front end: eig, jordan, bench, factor and gen subcommands
//
// exit codes: 0 ok, 2 residual/verification failure, 3 input or assumption
// error, 4 refusal because a rank decision is ambiguous
//

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lreig/densekit.hpp>
#include <lreig/factorize.hpp>
#include <lreig/fixtures.hpp>
#include <lreig/io/matrix_market.hpp>
#include <lreig/jordan.hpp>
#include <lreig/lowrank.hpp>
#include <lreig/report.hpp>
#include <lreig/spectrum.hpp>
#include <lreig/symmetric.hpp>

namespace lreig::cli {

enum exit_code : int
{
    exit_ok              = 0,
    exit_residual        = 2,
    exit_input           = 3,
    exit_ambiguous_rank  = 4
};

struct GlobalOptions
{
    std::string               json;            // report path, "-" for stdout
    std::uint64_t             seed = 1;
    std::optional< double >   tol_rank;
    std::optional< double >   tol_zero;
    std::optional< double >   tol_residual;

    ToleranceConfig
    config () const
    {
        ToleranceConfig  cfg;

        cfg.rank_rtol = tol_rank;
        if ( tol_zero )     cfg.zero_eig_atol = *tol_zero;
        if ( tol_residual ) cfg.residual_rtol = *tol_residual;

        cfg.validate();

        return cfg;
    }
};

struct EigOptions
{
    std::string               a, b, x, s;
    std::optional< Index >    rank;
    bool                      symmetric = false;
    bool                      vectors   = false;
    bool                      normalize = false;
    bool                      oracle    = false;
    std::string               out_w;
};

struct JordanOptions
{
    std::string  a, b;
};

struct BenchOptions
{
    Index   n              = 1000;
    Index   r              = 10;
    Index   trials         = 3;
    bool    symmetric      = false;
    bool    vectors        = false;
    bool    dense_baseline = false;
    Index   dense_max_n    = 3000;
    Index   dense_trials   = 1;
};

struct FactorOptions
{
    std::string             x;
    std::optional< Index >  rank;
    bool                    symmetric = false;
    std::string             out_a, out_b, out_s;
};

struct GenOptions
{
    Index                 n = 10;
    Index                 r = 2;
    bool                  symmetric   = false;
    bool                  is_complex  = false;
    std::vector< Index >  zero_blocks;
    bool                  integer     = false;
    std::string           out_a, out_b, out_s, out_x;
};

// largest N for which --oracle forms the dense product
inline constexpr Index oracle_max_n = 4000;

namespace detail {

using clock = std::chrono::steady_clock;

inline
double
seconds_since ( clock::time_point  t0 )
{
    return std::chrono::duration< double >( clock::now() - t0 ).count();
}

inline
bool
any_complex ( const std::vector< std::string > &  paths )
{
    for ( const auto &  p : paths )
        if ( ! p.empty() && io::read_matrix_market_header( p ).is_complex() )
            return true;

    return false;
}

inline
double
median ( std::vector< double >  v )
{
    std::sort( v.begin(), v.end() );

    const std::size_t  n = v.size();

    return n % 2 == 1 ? v[ n / 2 ] : 0.5 * ( v[ n / 2 - 1 ] + v[ n / 2 ] );
}

inline
void
set_flop_models ( RunReport &  rep,
                  Index        N,
                  Index        r,
                  bool         symmetric,
                  bool         vectors )
{
    const Index  big   = std::max( N, r );
    const Index  small = std::min( N, r );

    rep.flops_model_lowrank = small > 0 ? flop_model( std::uint64_t( big ), std::uint64_t( small ), symmetric, vectors ) : 0;
    rep.flops_model_dense   = N > 0 ? dense_flop_model( std::uint64_t( N ), symmetric, vectors ) : 0;
}

template < Scalar T >
std::vector< complex_t >
nonzero_dense_spectrum ( const Matrix< T > &      X,
                         bool                     symmetric,
                         const ToleranceConfig &  cfg )
{
    ComplexVector  vals;

    if ( symmetric ) vals = symmetric_eig( X, false ).values.template cast< complex_t >();
    else             vals = eig_dense( X, false ).values;

    std::vector< complex_t >  res;

    for ( Index  i : nonzero_filter( vals, X.norm(), cfg ) )
        res.push_back( vals( i ) );

    return res;
}

template < Scalar T >
RunReport
eig_impl ( const EigOptions &     opt,
           const GlobalOptions &  g )
{
    const ToleranceConfig  cfg = g.config();
    RunReport              rep;

    rep.command   = "eig";
    rep.symmetric = opt.symmetric;

    const auto  t0 = clock::now();

    // the matrix the spectrum belongs to, formed only for --oracle
    std::optional< Matrix< T > >  dense;
    Matrix< T >                   W;
    bool                          have_vectors = false;

    if ( ! opt.x.empty() )
    {
        const Matrix< T >  X = io::read_matrix_market< T >( opt.x );

        require_square( X, "--x matrix" );

        rep.N = X.rows();

        if ( opt.symmetric )
        {
            if ( opt.rank )
                throw InvalidArgument( "--rank is not supported together with --symmetric" );

            const auto  F   = symmetric_factor( X, cfg );
            const auto  res = symmetric_lowrank_eig( F, cfg );

            rep.r = F.rank();
            rep.eigenvalues.assign( res.lambdas.data(), res.lambdas.data() + res.lambdas.size() );
            rep.residual_max = res.max_residual();
            W                = res.W;
            have_vectors     = true;
        }
        else
        {
            const auto  tf = truncated_svd_factor( X, opt.rank, cfg );

            if ( tf.rank_exceeds_numeric )
                rep.warnings.push_back( "requested rank " + std::to_string( tf.pair.rank() ) +
                                        " exceeds the numerical rank " + std::to_string( tf.numeric_rank ) +
                                        " of X; truncation error " + num_str( tf.discarded ) );

            const auto  res = lowrank_eig( tf.pair, opt.vectors, cfg, opt.normalize );

            rep.r           = tf.pair.rank();
            rep.eigenvalues = to_std_vector( res.lambdas );
            rep.dropped     = res.dropped;

            if ( opt.vectors )
                rep.residual_max = res.max_residual();

            if ( res.rank_deficient && tf.pair.rank() > 0 )
                rep.warnings.push_back( "B·A is numerically rank deficient; a shorter factorization exists" );

            if ( opt.vectors && ! opt.out_w.empty() )
                io::write_matrix_market< complex_t >( res.W, opt.out_w );
        }

        if ( opt.oracle )
            dense = X;
    }
    else if ( ! opt.a.empty() )
    {
        const Matrix< T >  A = io::read_matrix_market< T >( opt.a );

        rep.N = A.rows();
        rep.r = A.cols();

        if ( opt.symmetric )
        {
            if ( ! opt.b.empty() )
                throw InvalidArgument( "--symmetric takes --a and optionally --s, not --b" );

            const Matrix< T >  S = opt.s.empty() ? Matrix< T >( Matrix< T >::Identity( A.cols(), A.cols() ) )
                                                 : io::read_matrix_market< T >( opt.s );

            const SymmetricFactorization< T >  F( A, S, cfg );
            const auto                          res = symmetric_lowrank_eig( F, cfg );

            rep.eigenvalues.assign( res.lambdas.data(), res.lambdas.data() + res.lambdas.size() );
            rep.residual_max = res.max_residual();
            W                = res.W;
            have_vectors     = true;

            if ( opt.oracle )
            {
                if ( rep.N > oracle_max_n )
                    throw InvalidArgument( "--oracle: N exceeds " + std::to_string( oracle_max_n ) );

                Matrix< T >  X = A * S * A.adjoint();

                dense = Matrix< T >( ( X + X.adjoint() ) / 2.0 );
            }
        }
        else
        {
            if ( opt.b.empty() )
                throw InvalidArgument( "--a requires --b (or --symmetric)" );

            if ( ! opt.s.empty() )
                throw InvalidArgument( "--s is only valid together with --symmetric" );

            const Matrix< T >  B = io::read_matrix_market< T >( opt.b );

            if ( A.cols() != B.rows() || A.rows() != B.cols() )
                throw DimensionError( "factor shapes do not match: A is " + shape_str( A ) + ", B is " + shape_str( B ) );

            const auto  res = lowrank_eig( A, B, opt.vectors, cfg, opt.normalize );

            rep.eigenvalues = to_std_vector( res.lambdas );
            rep.dropped     = res.dropped;

            if ( opt.vectors )
            {
                rep.residual_max = res.max_residual();

                if ( ! opt.out_w.empty() )
                    io::write_matrix_market< complex_t >( res.W, opt.out_w );
            }

            if ( res.rank_deficient && std::min( rep.N, rep.r ) > 0 )
                rep.warnings.push_back( "B·A is numerically rank deficient; a shorter factorization exists" );

            if ( opt.oracle )
            {
                if ( rep.N > oracle_max_n )
                    throw InvalidArgument( "--oracle: N exceeds " + std::to_string( oracle_max_n ) );

                dense = Matrix< T >( A * B );
            }
        }
    }
    else
        throw InvalidArgument( "eig needs either --x or --a" );

    rep.wall_time_seconds = seconds_since( t0 );

    set_flop_models( rep, rep.N, rep.r, opt.symmetric, opt.vectors );

    if ( have_vectors && opt.symmetric && ! opt.out_w.empty() )
        io::write_matrix_market< T >( W, opt.out_w );

    if ( rep.residual_max && *rep.residual_max > cfg.residual_rtol )
    {
        rep.warnings.push_back( "residual " + num_str( *rep.residual_max ) + " exceeds tolerance " +
                                num_str( cfg.residual_rtol ) );
        rep.exit_code = exit_residual;
    }

    if ( dense )
    {
        const auto  ref = nonzero_dense_spectrum( *dense, opt.symmetric, cfg );
        const auto  cmp = compare_spectra( rep.eigenvalues, ref );

        rep.oracle_max_error = cmp.same_size ? cmp.max_relative_error : 1.0;

        if ( ! cmp.within( cfg.residual_rtol ) )
        {
            rep.warnings.push_back( "dense oracle disagrees: " + std::to_string( ref.size() ) + " reference eigenvalues, "
                                    "max relative error " + num_str( *rep.oracle_max_error ) );
            rep.exit_code = exit_residual;
        }
    }

    return rep;
}

template < Scalar T >
RunReport
jordan_impl ( const JordanOptions &  opt,
              const GlobalOptions &  g )
{
    const ToleranceConfig  cfg = g.config();
    RunReport              rep;

    rep.command = "jordan";

    const auto  t0 = clock::now();

    if ( opt.a.empty() || opt.b.empty() )
        throw InvalidArgument( "jordan needs --a and --b" );

    const FactorPair< T >  F( io::read_matrix_market< T >( opt.a ), io::read_matrix_market< T >( opt.b ) );

    rep.N = F.N();
    rep.r = F.rank();

    const auto  check = verify_structure( F, cfg );
    const auto  eig   = lowrank_eig( F, false, cfg );

    rep.eigenvalues          = to_std_vector( eig.lambdas );
    rep.dropped              = eig.dropped;
    rep.structure_predicted  = check.prediction.predicted.block_sizes;
    rep.structure_measured   = check.measured.block_sizes;
    rep.match                = check.match;
    rep.wall_time_seconds    = seconds_since( t0 );

    set_flop_models( rep, rep.N, rep.r, false, false );

    if ( ! check.match )
    {
        rep.warnings.push_back( "measured zero-eigenvalue structure differs from the prediction" );
        rep.exit_code = exit_residual;
    }

    return rep;
}

template < Scalar T >
void
write_if ( const std::string &  path,
           const Matrix< T > &  M )
{
    if ( ! path.empty() )
        io::write_matrix_market< T >( M, path );
}

template < Scalar T >
RunReport
factor_impl ( const FactorOptions &  opt,
              const GlobalOptions &  g )
{
    const ToleranceConfig  cfg = g.config();
    RunReport              rep;

    rep.command   = "factor";
    rep.symmetric = opt.symmetric;

    const auto  t0 = clock::now();

    if ( opt.x.empty() )
        throw InvalidArgument( "factor needs --x" );

    const Matrix< T >  X = io::read_matrix_market< T >( opt.x );

    require_square( X, "--x matrix" );

    rep.N = X.rows();

    Matrix< T >  Y;

    if ( opt.symmetric )
    {
        if ( opt.rank )
            throw InvalidArgument( "--rank is not supported together with --symmetric" );

        const auto  F = symmetric_factor( X, cfg );

        rep.r = F.rank();
        Y     = F.Atilde() * F.Stilde() * F.Atilde().adjoint();

        detail::write_if( opt.out_a, F.Atilde() );
        detail::write_if( opt.out_s, F.Stilde() );
    }
    else
    {
        const auto  tf = truncated_svd_factor( X, opt.rank, cfg );

        if ( tf.rank_exceeds_numeric )
            rep.warnings.push_back( "requested rank exceeds the numerical rank " + std::to_string( tf.numeric_rank ) );

        rep.r = tf.pair.rank();
        Y     = tf.pair.A() * tf.pair.B();

        detail::write_if( opt.out_a, tf.pair.A() );
        detail::write_if( opt.out_b, tf.pair.B() );
    }

    const double  xn = X.norm();

    rep.reconstruction_error = xn > 0.0 ? ( X - Y ).norm() / xn : ( X - Y ).norm();
    rep.wall_time_seconds    = seconds_since( t0 );

    return rep;
}

} // namespace detail

inline
RunReport
cmd_eig ( const EigOptions &     opt,
          const GlobalOptions &  g )
{
    if ( detail::any_complex( { opt.a, opt.b, opt.x, opt.s } ) )
        return detail::eig_impl< complex_t >( opt, g );

    return detail::eig_impl< double >( opt, g );
}

inline
RunReport
cmd_jordan ( const JordanOptions &  opt,
             const GlobalOptions &  g )
{
    if ( detail::any_complex( { opt.a, opt.b } ) )
        return detail::jordan_impl< complex_t >( opt, g );

    return detail::jordan_impl< double >( opt, g );
}

inline
RunReport
cmd_factor ( const FactorOptions &  opt,
             const GlobalOptions &  g )
{
    if ( detail::any_complex( { opt.x } ) )
        return detail::factor_impl< complex_t >( opt, g );

    return detail::factor_impl< double >( opt, g );
}

//
// random factors, timing of the low-rank path (median over trials after
// one warm-up run) and optionally of the dense solver on the formed product
//
inline
RunReport
cmd_bench ( const BenchOptions &   opt,
            const GlobalOptions &  g )
{
    const ToleranceConfig  cfg = g.config();
    RunReport              rep;

    if ( opt.n <= 0 || opt.r <= 0 || opt.r > opt.n )
        throw InvalidArgument( "bench needs 0 < r <= n" );

    if ( opt.trials <= 0 || opt.dense_trials <= 0 )
        throw InvalidArgument( "bench needs a positive number of trials" );

    rep.command   = "bench";
    rep.N         = opt.n;
    rep.r         = opt.r;
    rep.symmetric = opt.symmetric;
    rep.seed      = g.seed;
    rep.trials    = opt.trials;

    detail::set_flop_models( rep, opt.n, opt.r, opt.symmetric, opt.vectors );

    if ( rep.flops_model_lowrank >= rep.flops_model_dense )
        rep.warnings.push_back( "no compression: low-rank flop model " + std::to_string( rep.flops_model_lowrank ) +
                                " >= dense model " + std::to_string( rep.flops_model_dense ) );

    Rng  rng( g.seed );

    std::vector< double >  times;

    if ( opt.symmetric )
    {
        const RealMatrix  At = random_matrix< double >( opt.n, opt.r, rng );
        RealMatrix        St = RealMatrix::Zero( opt.r, opt.r );

        std::uniform_real_distribution< double >  mag( 1.0, 2.0 );

        for ( Index  i = 0; i < opt.r; ++i )
            St( i, i ) = ( i % 2 == 0 ? 1.0 : -1.0 ) * mag( rng );

        const SymmetricFactorization< double >  F( At, St, cfg );

        SymmetricEigenResult< double >  res;

        for ( Index  t = 0; t <= opt.trials; ++t )
        {
            const auto  t0 = detail::clock::now();

            res = symmetric_lowrank_eig( F, cfg );

            if ( t > 0 ) times.push_back( detail::seconds_since( t0 ) );
        }

        rep.eigenvalues.assign( res.lambdas.data(), res.lambdas.data() + res.lambdas.size() );
        rep.residual_max = res.max_residual();

        if ( opt.dense_baseline )
        {
            if ( opt.n > opt.dense_max_n )
                rep.warnings.push_back( "dense baseline skipped: N = " + std::to_string( opt.n ) + " exceeds " +
                                        std::to_string( opt.dense_max_n ) );
            else
            {
                RealMatrix  X = At * St * At.transpose();

                X = ( X + X.transpose() ).eval() / 2.0;

                std::vector< double >  dtimes;

                for ( Index  t = 0; t < opt.dense_trials; ++t )
                {
                    const auto  t0 = detail::clock::now();

                    symmetric_eig( X, opt.vectors );
                    dtimes.push_back( detail::seconds_since( t0 ) );
                }

                rep.dense_wall_time_seconds = detail::median( dtimes );
            }
        }
    }
    else
    {
        const RealMatrix  A = random_matrix< double >( opt.n, opt.r, rng );
        const RealMatrix  B = random_matrix< double >( opt.r, opt.n, rng );

        const FactorPair< double >  F( A, B );

        EigenResult  res;

        for ( Index  t = 0; t <= opt.trials; ++t )
        {
            const auto  t0 = detail::clock::now();

            res = lowrank_eig( F, opt.vectors, cfg );

            if ( t > 0 ) times.push_back( detail::seconds_since( t0 ) );
        }

        rep.eigenvalues = to_std_vector( res.lambdas );
        rep.dropped     = res.dropped;

        if ( opt.vectors )
            rep.residual_max = res.max_residual();

        if ( opt.dense_baseline )
        {
            if ( opt.n > opt.dense_max_n )
                rep.warnings.push_back( "dense baseline skipped: N = " + std::to_string( opt.n ) + " exceeds " +
                                        std::to_string( opt.dense_max_n ) );
            else
            {
                const RealMatrix  X = A * B;

                std::vector< double >  dtimes;

                for ( Index  t = 0; t < opt.dense_trials; ++t )
                {
                    const auto  t0 = detail::clock::now();

                    eig_dense( X, opt.vectors );
                    dtimes.push_back( detail::seconds_since( t0 ) );
                }

                rep.dense_wall_time_seconds = detail::median( dtimes );
            }
        }
    }

    rep.wall_time_seconds = detail::median( times );

    if ( rep.dense_wall_time_seconds && rep.wall_time_seconds > 0.0 )
        rep.speedup = *rep.dense_wall_time_seconds / rep.wall_time_seconds;

    if ( rep.residual_max && *rep.residual_max > cfg.residual_rtol )
        rep.exit_code = exit_residual;

    return rep;
}

//
// write random or integer fixture factors
//
inline
RunReport
cmd_gen ( const GenOptions &     opt,
          const GlobalOptions &  g )
{
    RunReport  rep;

    rep.command   = "gen";
    rep.N         = opt.n;
    rep.r         = opt.r;
    rep.symmetric = opt.symmetric;
    rep.seed      = g.seed;

    if ( opt.n <= 0 || opt.r < 0 || opt.r > opt.n )
        throw InvalidArgument( "gen needs 0 <= r <= n and n > 0" );

    Rng  rng( g.seed );

    auto  write_x = [&] ( const auto &  X )
    {
        using value_t = typename std::decay_t< decltype( X ) >::Scalar;

        if ( ! opt.out_x.empty() )
            io::write_matrix_market< value_t >( X, opt.out_x );
    };

    if ( opt.integer || ! opt.zero_blocks.empty() )
    {
        if ( opt.symmetric || opt.is_complex )
            throw InvalidArgument( "integer fixtures are real and nonsymmetric" );

        std::vector< std::pair< double, Index > >  blocks;
        Index                                      used = 0;

        for ( Index  k : opt.zero_blocks )
        {
            if ( k <= 0 )
                throw InvalidArgument( "--zero-blocks entries must be positive" );

            blocks.emplace_back( 0.0, k );
            used += k;
        }

        if ( used > opt.r )
            throw InvalidArgument( "--zero-blocks sum to more than r" );

        // remaining eigenvalues 1, 2, ... in 1x1 blocks
        for ( Index  i = 0; i < opt.r - used; ++i )
            blocks.emplace_back( double( i + 1 ), 1 );

        if ( Index( opt.zero_blocks.size() ) > opt.n - opt.r )
            throw RankError( "gen: " + std::to_string( opt.zero_blocks.size() ) + " zero blocks need N - r >= " +
                             std::to_string( opt.zero_blocks.size() ) + " for full-rank factors" );

        const auto  fx = make_integer_fixture( opt.n, blocks, rng );

        detail::write_if( opt.out_a, fx.A );
        detail::write_if( opt.out_b, fx.B );
        write_x( RealMatrix( fx.A * fx.B ) );
    }
    else if ( opt.symmetric )
    {
        std::uniform_real_distribution< double >  mag( 1.0, 2.0 );

        auto  emit = [&] < typename T > ( T )
        {
            const Matrix< T >  At = random_matrix< T >( opt.n, opt.r, rng );
            Matrix< T >        St = Matrix< T >::Zero( opt.r, opt.r );

            for ( Index  i = 0; i < opt.r; ++i )
                St( i, i ) = ( i % 2 == 0 ? 1.0 : -1.0 ) * mag( rng );

            detail::write_if( opt.out_a, At );
            detail::write_if( opt.out_s, St );

            Matrix< T >  X = At * St * At.adjoint();

            write_x( Matrix< T >( ( X + X.adjoint() ) / 2.0 ) );
        };

        if ( opt.is_complex ) emit( complex_t() );
        else                  emit( 0.0 );
    }
    else
    {
        auto  emit = [&] < typename T > ( T )
        {
            const Matrix< T >  A = random_matrix< T >( opt.n, opt.r, rng );
            const Matrix< T >  B = random_matrix< T >( opt.r, opt.n, rng );

            detail::write_if( opt.out_a, A );
            detail::write_if( opt.out_b, B );
            write_x( Matrix< T >( A * B ) );
        };

        if ( opt.is_complex ) emit( complex_t() );
        else                  emit( 0.0 );
    }

    return rep;
}

//
// human-readable summary
//
inline
void
print_summary ( const RunReport &  rep,
                std::ostream &     out )
{
    const auto  flags = out.flags();

    out << rep.command << ": N = " << rep.N << ", r = " << rep.r << ( rep.symmetric ? " (symmetric)" : "" ) << '\n';

    if ( rep.command != "gen" && rep.command != "factor" )
    {
        out << "  nonzero eigenvalues: " << rep.eigenvalues.size() << " (dropped " << rep.dropped << ")\n";

        out << std::setprecision( 12 );

        for ( const auto &  l : rep.eigenvalues )
            out << "    " << l.real() << ( l.imag() < 0 ? " - " : " + " ) << std::abs( l.imag() ) << "i\n";
    }

    out << std::setprecision( 6 );

    if ( rep.residual_max )         out << "  max residual: " << *rep.residual_max << '\n';
    if ( rep.oracle_max_error )     out << "  dense oracle max relative error: " << *rep.oracle_max_error << '\n';
    if ( rep.reconstruction_error ) out << "  relative reconstruction error: " << *rep.reconstruction_error << '\n';

    auto  print_blocks = [&] ( const char *  name, const std::vector< Index > &  b )
    {
        out << "  " << name << " zero blocks of A·B: [";
        for ( std::size_t  i = 0; i < b.size(); ++i ) out << ( i ? ", " : "" ) << b[ i ];
        out << "]\n";
    };

    if ( rep.structure_predicted ) print_blocks( "predicted", *rep.structure_predicted );
    if ( rep.structure_measured )  print_blocks( "measured",  *rep.structure_measured );
    if ( rep.match )               out << "  match: " << ( *rep.match ? "yes" : "no" ) << '\n';

    if ( rep.command == "bench" || rep.command == "eig" )
        out << "  flop model: low-rank " << rep.flops_model_lowrank << ", dense " << rep.flops_model_dense << '\n';

    if ( rep.command == "bench" )
    {
        out << "  low-rank time (median of " << rep.trials.value_or( 0 ) << "): " << rep.wall_time_seconds << " s\n";

        if ( rep.dense_wall_time_seconds ) out << "  dense time: " << *rep.dense_wall_time_seconds << " s\n";
        if ( rep.speedup )                 out << "  speedup: " << *rep.speedup << "x\n";
    }

    for ( const auto &  w : rep.warnings )
        out << "  warning: " << w << '\n';

    out.flags( flags );
}

//
// parse arguments, run one subcommand, write the report; returns the exit code
//
inline
int
run ( int                  argc,
      const char * const * argv,
      std::ostream &       out = std::cout,
      std::ostream &       err = std::cerr )
{
    CLI::App  app{ "lreig: eigenvalues, eigenvectors and Jordan structure of low-rank matrices X = A·B" };

    app.require_subcommand( 1 );
    app.fallthrough();

    GlobalOptions  g;

    app.add_option( "--json", g.json, "write the JSON report to this path ('-' for stdout)" );
    app.add_option( "--seed", g.seed, "random seed" );
    app.add_option( "--tol-rank", g.tol_rank, "relative singular value cutoff for rank decisions" );
    app.add_option( "--tol-zero", g.tol_zero, "relative cutoff below which eigenvalues count as zero" );
    app.add_option( "--tol-residual", g.tol_residual, "residual acceptance threshold" );

    EigOptions     eo;
    JordanOptions  jo;
    BenchOptions   bo;
    FactorOptions  fo;
    GenOptions     go;

    auto *  eig = app.add_subcommand( "eig", "nonzero eigenvalues (and vectors) of A·B or of a dense low-rank X" );

    eig->add_option( "--a", eo.a, "factor A (N x r), Matrix Market" );
    eig->add_option( "--b", eo.b, "factor B (r x N), Matrix Market" );
    eig->add_option( "--x", eo.x, "dense N x N matrix, factorized first" );
    eig->add_option( "--s", eo.s, "middle factor S (r x r) for --symmetric" );
    eig->add_option( "--rank", eo.rank, "truncation rank for --x" );
    eig->add_flag( "--symmetric", eo.symmetric, "symmetry-preserving path X = A·S·A^T" );
    eig->add_flag( "--vectors", eo.vectors, "compute eigenvectors and residuals" );
    eig->add_flag( "--normalize", eo.normalize, "normalize lifted eigenvectors" );
    eig->add_flag( "--oracle", eo.oracle, "cross-check against the dense eigensolver on the formed matrix" );
    eig->add_option( "--out-w", eo.out_w, "write eigenvectors W to this Matrix Market file" );

    auto *  jordan = app.add_subcommand( "jordan", "predict and measure the zero-eigenvalue Jordan blocks of A·B" );

    jordan->add_option( "--a", jo.a, "factor A (N x r)" )->required();
    jordan->add_option( "--b", jo.b, "factor B (r x N)" )->required();

    auto *  bench = app.add_subcommand( "bench", "time the low-rank path against the dense solver" );

    bench->add_option( "--n", bo.n, "dimension N" );
    bench->add_option( "--r", bo.r, "rank r" );
    bench->add_option( "--trials", bo.trials, "timed trials (after one warm-up)" );
    bench->add_flag( "--symmetric", bo.symmetric, "symmetric factors A·S·A^T" );
    bench->add_flag( "--vectors", bo.vectors, "include eigenvectors" );
    bench->add_flag( "--dense-baseline", bo.dense_baseline, "also time the dense solver on the formed N x N matrix" );
    bench->add_option( "--dense-max-n", bo.dense_max_n, "skip the dense baseline above this N" );
    bench->add_option( "--dense-trials", bo.dense_trials, "timed dense trials" );

    auto *  factor = app.add_subcommand( "factor", "factorize a dense low-rank matrix" );

    factor->add_option( "--x", fo.x, "dense N x N matrix" )->required();
    factor->add_option( "--rank", fo.rank, "truncation rank" );
    factor->add_flag( "--symmetric", fo.symmetric, "symmetric factorization Atilde·S·Atilde^T" );
    factor->add_option( "--out-a", fo.out_a, "output path for A (or Atilde)" );
    factor->add_option( "--out-b", fo.out_b, "output path for B" );
    factor->add_option( "--out-s", fo.out_s, "output path for S (symmetric)" );

    auto *  gen = app.add_subcommand( "gen", "write random or integer test factors" );

    gen->add_option( "--n", go.n, "dimension N" );
    gen->add_option( "--r", go.r, "rank r" );
    gen->add_flag( "--symmetric", go.symmetric, "Atilde and sign-definite S" );
    gen->add_flag( "--complex", go.is_complex, "complex Gaussian entries" );
    gen->add_flag( "--integer", go.integer, "integer factors with prescribed Jordan form of B·A" );
    gen->add_option( "--zero-blocks", go.zero_blocks, "sizes of the zero Jordan blocks of B·A (integer fixtures)" )
        ->delimiter( ',' );
    gen->add_option( "--out-a", go.out_a, "output path for A" );
    gen->add_option( "--out-b", go.out_b, "output path for B" );
    gen->add_option( "--out-s", go.out_s, "output path for S" );
    gen->add_option( "--out-x", go.out_x, "output path for the product" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError &  e )
    {
        const int  code = app.exit( e, out, err );

        return code == 0 ? exit_ok : exit_input;
    }

    RunReport  rep;

    auto  fail = [&] ( const std::string &  command, const std::string &  msg, int  code )
    {
        rep           = RunReport();
        rep.command   = command;
        rep.error     = msg;
        rep.exit_code = code;
        err << "lreig " << command << ": " << msg << '\n';
    };

    const std::string  command = app.get_subcommands().front()->get_name();

    try
    {
        if      ( *eig )    rep = cmd_eig( eo, g );
        else if ( *jordan ) rep = cmd_jordan( jo, g );
        else if ( *bench )  rep = cmd_bench( bo, g );
        else if ( *factor ) rep = cmd_factor( fo, g );
        else if ( *gen )    rep = cmd_gen( go, g );
    }
    catch ( const AmbiguousRankError &  e )
    {
        fail( command, e.what(), exit_ambiguous_rank );
    }
    catch ( const Error &  e )
    {
        fail( command, e.what(), exit_input );
    }

    if ( g.json == "-" )
        out << to_json( rep ).dump( 2 ) << '\n';
    else
    {
        if ( ! rep.error )
            print_summary( rep, out );

        if ( ! g.json.empty() )
        {
            std::ofstream  f( g.json );

            if ( ! f )
            {
                err << "lreig: cannot write report to '" << g.json << "'\n";
                return exit_input;
            }

            f << to_json( rep ).dump( 2 ) << '\n';
        }
    }

    return rep.exit_code;
}

} // namespace lreig::cli

#endif // LREIG_CLI_HPP
