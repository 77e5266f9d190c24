#ifndef LREIG_REPORT_HPP
#define LREIG_REPORT_HPP

//
// RunReport: machine-readable outcome of a CLI command, serialized as JSON
//
// {
//   "schema": 1,
//   "command": "eig",
//   "inputs": { "N": 3, "r": 1, "symmetric": false },
//   "eigenvalues": [ [re, im], ... ],
//   "dropped": 0,
//   "residual_max": 1e-17 | null,
//   "flops_model_lowrank": 3, "flops_model_dense": 243,
//   "wall_time_seconds": 1e-5,
//   "structure": { "predicted": [3, 1], "measured": [3, 1] } | null,
//   "match": true | null,
//   ...optional bench / oracle / factor fields...,
//   "warnings": [ ... ],
//   "error": "..." | null,
//   "exit_code": 0
// }
//

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <lreig/densekit.hpp>

namespace lreig {

inline constexpr int report_schema = 1;

struct RunReport
{
    int                                   schema = report_schema;
    std::string                           command;

    Index                                 N         = 0;
    Index                                 r         = 0;
    bool                                  symmetric = false;

    std::vector< complex_t >              eigenvalues;
    Index                                 dropped = 0;
    std::optional< double >               residual_max;

    std::uint64_t                         flops_model_lowrank = 0;
    std::uint64_t                         flops_model_dense   = 0;
    double                                wall_time_seconds   = 0.0;

    std::optional< std::vector< Index > > structure_predicted;
    std::optional< std::vector< Index > > structure_measured;
    std::optional< bool >                 match;

    // bench
    std::optional< std::uint64_t >        seed;
    std::optional< Index >                trials;
    std::optional< double >               dense_wall_time_seconds;
    std::optional< double >               speedup;

    // eig --oracle
    std::optional< double >               oracle_max_error;

    // factor
    std::optional< double >               reconstruction_error;

    std::vector< std::string >            warnings;
    std::optional< std::string >          error;
    int                                   exit_code = 0;

    bool operator == ( const RunReport & ) const = default;
};

namespace detail {

template < typename V >
nlohmann::json
opt_json ( const std::optional< V > &  v )
{
    return v ? nlohmann::json( *v ) : nlohmann::json( nullptr );
}

template < typename V >
std::optional< V >
opt_get ( const nlohmann::json &  j,
          const char *            key )
{
    if ( ! j.contains( key ) || j.at( key ).is_null() )
        return std::nullopt;

    return j.at( key ).get< V >();
}

} // namespace detail

inline
nlohmann::json
to_json ( const RunReport &  rep )
{
    using nlohmann::json;
    using detail::opt_json;

    json  eigs = json::array();

    for ( const auto &  l : rep.eigenvalues )
        eigs.push_back( json::array( { l.real(), l.imag() } ) );

    json  structure = nullptr;

    if ( rep.structure_predicted || rep.structure_measured )
        structure = { { "predicted", opt_json( rep.structure_predicted ) },
                      { "measured",  opt_json( rep.structure_measured ) } };

    json  j;

    j[ "schema" ]                  = rep.schema;
    j[ "command" ]                 = rep.command;
    j[ "inputs" ]                  = { { "N", rep.N }, { "r", rep.r }, { "symmetric", rep.symmetric } };
    j[ "eigenvalues" ]             = eigs;
    j[ "dropped" ]                 = rep.dropped;
    j[ "residual_max" ]            = opt_json( rep.residual_max );
    j[ "flops_model_lowrank" ]     = rep.flops_model_lowrank;
    j[ "flops_model_dense" ]       = rep.flops_model_dense;
    j[ "wall_time_seconds" ]       = rep.wall_time_seconds;
    j[ "structure" ]               = structure;
    j[ "match" ]                   = opt_json( rep.match );
    j[ "seed" ]                    = opt_json( rep.seed );
    j[ "trials" ]                  = opt_json( rep.trials );
    j[ "dense_wall_time_seconds" ] = opt_json( rep.dense_wall_time_seconds );
    j[ "speedup" ]                 = opt_json( rep.speedup );
    j[ "oracle_max_error" ]        = opt_json( rep.oracle_max_error );
    j[ "reconstruction_error" ]    = opt_json( rep.reconstruction_error );
    j[ "warnings" ]                = rep.warnings;
    j[ "error" ]                   = opt_json( rep.error );
    j[ "exit_code" ]               = rep.exit_code;

    return j;
}

inline
RunReport
report_from_json ( const nlohmann::json &  j )
{
    using detail::opt_get;

    RunReport  rep;

    try
    {
        rep.schema = j.at( "schema" ).get< int >();

        if ( rep.schema != report_schema )
            throw ParseError( "unsupported report schema " + std::to_string( rep.schema ) );

        rep.command   = j.at( "command" ).get< std::string >();
        rep.N         = j.at( "inputs" ).at( "N" ).get< Index >();
        rep.r         = j.at( "inputs" ).at( "r" ).get< Index >();
        rep.symmetric = j.at( "inputs" ).at( "symmetric" ).get< bool >();

        for ( const auto &  e : j.at( "eigenvalues" ) )
            rep.eigenvalues.emplace_back( e.at( 0 ).get< double >(), e.at( 1 ).get< double >() );

        rep.dropped             = j.at( "dropped" ).get< Index >();
        rep.residual_max        = opt_get< double >( j, "residual_max" );
        rep.flops_model_lowrank = j.at( "flops_model_lowrank" ).get< std::uint64_t >();
        rep.flops_model_dense   = j.at( "flops_model_dense" ).get< std::uint64_t >();
        rep.wall_time_seconds   = j.at( "wall_time_seconds" ).get< double >();

        if ( j.contains( "structure" ) && ! j.at( "structure" ).is_null() )
        {
            rep.structure_predicted = opt_get< std::vector< Index > >( j.at( "structure" ), "predicted" );
            rep.structure_measured  = opt_get< std::vector< Index > >( j.at( "structure" ), "measured" );
        }

        rep.match                   = opt_get< bool >( j, "match" );
        rep.seed                    = opt_get< std::uint64_t >( j, "seed" );
        rep.trials                  = opt_get< Index >( j, "trials" );
        rep.dense_wall_time_seconds = opt_get< double >( j, "dense_wall_time_seconds" );
        rep.speedup                 = opt_get< double >( j, "speedup" );
        rep.oracle_max_error        = opt_get< double >( j, "oracle_max_error" );
        rep.reconstruction_error    = opt_get< double >( j, "reconstruction_error" );
        rep.warnings                = j.at( "warnings" ).get< std::vector< std::string > >();
        rep.error                   = opt_get< std::string >( j, "error" );
        rep.exit_code               = j.at( "exit_code" ).get< int >();
    }
    catch ( const nlohmann::json::exception &  e )
    {
        throw ParseError( std::string( "malformed report: " ) + e.what() );
    }

    return rep;
}

} // namespace lreig

#endif // LREIG_REPORT_HPP
