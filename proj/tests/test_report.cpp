#include <gtest/gtest.h>

#include <lreig/report.hpp>

using namespace lreig;

namespace {

RunReport
full_report ()
{
    RunReport  r;

    r.command                 = "bench";
    r.N                       = 2000;
    r.r                       = 20;
    r.symmetric               = true;
    r.eigenvalues             = { { 1.5, 0 }, { -0.25, 3e-17 }, { 1e300, -1e-300 } };
    r.dropped                 = 2;
    r.residual_max            = 3.25e-15;
    r.flops_model_lowrank     = 1672000;
    r.flops_model_dense       = 72000000000ull;
    r.wall_time_seconds       = 0.1234567890123;
    r.structure_predicted     = std::vector< Index >{ 3, 1 };
    r.structure_measured      = std::vector< Index >{ 3, 1 };
    r.match                   = true;
    r.seed                    = 18446744073709551615ull;
    r.trials                  = 3;
    r.dense_wall_time_seconds = 12.5;
    r.speedup                 = 101.25;
    r.oracle_max_error        = 1e-14;
    r.reconstruction_error    = 0.0;
    r.warnings                = { "first", "second \"quoted\"" };
    r.error                   = "none really";
    r.exit_code               = 2;

    return r;
}

} // namespace

TEST( Report, RoundTripMinimal )
{
    RunReport  r;

    r.command = "eig";

    EXPECT_EQ( report_from_json( to_json( r ) ), r );
}

TEST( Report, RoundTripFull )
{
    const RunReport  r = full_report();

    EXPECT_EQ( report_from_json( to_json( r ) ), r );

    // through text as well
    const auto  text = to_json( r ).dump( 2 );

    EXPECT_EQ( report_from_json( nlohmann::json::parse( text ) ), r );
}

TEST( Report, PartialStructure )
{
    RunReport  r;

    r.command            = "jordan";
    r.structure_measured = std::vector< Index >{ 2, 2, 1 };

    const auto  j = to_json( r );

    EXPECT_TRUE( j.at( "structure" ).at( "predicted" ).is_null() );
    EXPECT_EQ( report_from_json( j ), r );
}

TEST( Report, Layout )
{
    const auto  j = to_json( full_report() );

    EXPECT_EQ( j.at( "schema" ), report_schema );
    EXPECT_EQ( j.at( "inputs" ).at( "N" ), 2000 );
    EXPECT_EQ( j.at( "eigenvalues" ).size(), 3u );
    EXPECT_EQ( j.at( "eigenvalues" )[ 1 ][ 0 ], -0.25 );
    EXPECT_EQ( j.at( "structure" ).at( "measured" ), nlohmann::json::array( { 3, 1 } ) );

    RunReport  empty;
    const auto  e = to_json( empty );

    EXPECT_TRUE( e.at( "structure" ).is_null() );
    EXPECT_TRUE( e.at( "residual_max" ).is_null() );
    EXPECT_TRUE( e.at( "eigenvalues" ).is_array() );
}

TEST( Report, MalformedInput )
{
    auto  j = to_json( full_report() );

    EXPECT_THROW( report_from_json( nlohmann::json::object() ), ParseError );

    auto  no_cmd = j;

    no_cmd.erase( "command" );
    EXPECT_THROW( report_from_json( no_cmd ), ParseError );

    auto  bad_type = j;

    bad_type[ "dropped" ] = "two";
    EXPECT_THROW( report_from_json( bad_type ), ParseError );

    auto  bad_eig = j;

    bad_eig[ "eigenvalues" ] = nlohmann::json::array( { nlohmann::json::array( { 1.0 } ) } );
    EXPECT_THROW( report_from_json( bad_eig ), ParseError );
}

TEST( Report, WrongSchema )
{
    auto  j = to_json( full_report() );

    j[ "schema" ] = report_schema + 1;
    EXPECT_THROW( report_from_json( j ), ParseError );
}
