#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <lreig/fixtures.hpp>
#include <lreig/io/matrix_market.hpp>

using namespace lreig;
using namespace lreig::io;

namespace {

const std::filesystem::path  data_dir = LREIG_TEST_DATA;

ComplexMatrix
parse ( const std::string &  text,
        MarketHeader *       h = nullptr )
{
    std::istringstream  in( text );

    return read_matrix_market( in, h );
}

std::size_t
parse_error_line ( const std::string &  text )
{
    try
    {
        parse( text );
    }
    catch ( const ParseError &  e )
    {
        return e.line();
    }

    ADD_FAILURE() << "no ParseError for:\n" << text;
    return 0;
}

bool
bit_identical ( const RealMatrix &  X,
                const RealMatrix &  Y )
{
    if ( X.rows() != Y.rows() || X.cols() != Y.cols() )
        return false;

    return std::memcmp( X.data(), Y.data(), sizeof( double ) * std::size_t( X.size() ) ) == 0;
}

std::filesystem::path
tmp_path ( const std::string &  name )
{
    return std::filesystem::temp_directory_path() / ( "lreig_mm_" + name );
}

} // namespace

TEST( MatrixMarket, ArrayIdentity )
{
    const RealMatrix  I = read_matrix_market< double >( data_dir / "identity2.mtx" );

    EXPECT_EQ( I, RealMatrix( RealMatrix::Identity( 2, 2 ) ) );
}

TEST( MatrixMarket, CoordinateSingleEntry )
{
    const RealMatrix  B = read_matrix_market< double >( data_dir / "orth_B.mtx" );
    RealMatrix        E = RealMatrix::Zero( 1, 3 );

    E( 0, 1 ) = 1.0;
    EXPECT_EQ( B, E );
}

TEST( MatrixMarket, IntegerCoordinate )
{
    const RealMatrix  A = read_matrix_market< double >( data_dir / "j2_A.mtx" );
    const RealMatrix  B = read_matrix_market< double >( data_dir / "j2_B.mtx" );
    RealMatrix        J = RealMatrix::Zero( 2, 2 );

    J( 0, 1 ) = 1;
    EXPECT_EQ( B * A, J );
}

TEST( MatrixMarket, WriteReadIsBitIdentical )
{
    Rng  rng( 61 );

    for ( int  trial = 0; trial < 20; ++trial )
    {
        RealMatrix  X = random_matrix< double >( 5, 3, rng );

        // awkward magnitudes and subnormals
        X( 0, 0 ) *= 1e-310;
        X( 1, 1 ) *= 1e300;
        X( 2, 2 )  = 0.1;
        X( 3, 0 )  = -0.0;

        const auto  path = tmp_path( "rt.mtx" );

        write_matrix_market( X, path );

        const RealMatrix  Y = read_matrix_market< double >( path );

        ASSERT_TRUE( bit_identical( X, Y ) );
        std::filesystem::remove( path );
    }
}

TEST( MatrixMarket, ComplexRoundTrip )
{
    Rng                  rng( 62 );
    const ComplexMatrix  X = random_matrix< complex_t >( 4, 6, rng );
    std::stringstream    ss;

    write_matrix_market( X, ss );

    MarketHeader         h;
    const ComplexMatrix  Y = read_matrix_market( ss, &h );

    EXPECT_TRUE( h.is_complex() );
    EXPECT_EQ( X, Y );
}

TEST( MatrixMarket, SymmetricExpansion )
{
    const RealMatrix  X = read_matrix_market< double >( data_dir / "diag_sym.mtx" );

    EXPECT_EQ( X.rows(), 4 );
    EXPECT_EQ( X( 0, 0 ), 2 );
    EXPECT_EQ( X( 1, 1 ), -3 );
    EXPECT_EQ( X.cwiseAbs().sum(), 5 );

    const ComplexMatrix  S = parse( "%%MatrixMarket matrix coordinate real symmetric\n"
                                    "3 3 2\n"
                                    "2 1 4\n"
                                    "3 3 1\n" );

    EXPECT_EQ( S( 0, 1 ), complex_t( 4 ) );
    EXPECT_EQ( S( 1, 0 ), complex_t( 4 ) );

    // array storage holds the lower triangle
    const ComplexMatrix  T = parse( "%%MatrixMarket matrix array real symmetric\n"
                                    "2 2\n"
                                    "1\n"
                                    "5\n"
                                    "7\n" );
    ComplexMatrix        E( 2, 2 );

    E << 1, 5, 5, 7;
    EXPECT_EQ( T, E );
}

TEST( MatrixMarket, SkewAndHermitianExpansion )
{
    const ComplexMatrix  K = parse( "%%MatrixMarket matrix coordinate real skew-symmetric\n"
                                    "2 2 1\n"
                                    "2 1 3\n" );

    EXPECT_EQ( K( 1, 0 ), complex_t( 3 ) );
    EXPECT_EQ( K( 0, 1 ), complex_t( -3 ) );

    const ComplexMatrix  H = read_matrix_market< complex_t >( data_dir / "herm.mtx" );

    EXPECT_EQ( H( 1, 0 ), complex_t( 0, 1 ) );
    EXPECT_EQ( H( 0, 1 ), complex_t( 0, -1 ) );
    EXPECT_EQ( ( H - H.adjoint() ).norm(), 0.0 );
}

TEST( MatrixMarket, PatternAndDuplicates )
{
    const ComplexMatrix  P = parse( "%%MatrixMarket matrix coordinate pattern general\n"
                                    "2 2 2\n"
                                    "1 1\n"
                                    "2 1\n" );

    EXPECT_EQ( P( 0, 0 ), complex_t( 1 ) );
    EXPECT_EQ( P( 1, 0 ), complex_t( 1 ) );
    EXPECT_EQ( P( 1, 1 ), complex_t( 0 ) );

    // duplicate coordinate entries are summed
    const ComplexMatrix  D = parse( "%%MatrixMarket matrix coordinate real general\n"
                                    "1 1 2\n"
                                    "1 1 1.5\n"
                                    "1 1 2.5\n" );

    EXPECT_EQ( D( 0, 0 ), complex_t( 4 ) );
}

TEST( MatrixMarket, CommentsAndBlankLines )
{
    const ComplexMatrix  X = parse( "%%MatrixMarket matrix array real general\n"
                                    "% comment\n"
                                    "\n"
                                    "1 2\n"
                                    "% between values\n"
                                    "  3.5  \n"
                                    "\n"
                                    "-1e-3\n" );

    ASSERT_EQ( X.cols(), 2 );
    EXPECT_EQ( X( 0, 0 ), complex_t( 3.5 ) );
    EXPECT_EQ( X( 0, 1 ), complex_t( -1e-3 ) );
}

TEST( MatrixMarket, ParseErrorsCarryLineNumbers )
{
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix array real general\n2 2\n1\nabc\n0\n1\n" ), 4u );
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix array real general\n2 2\n1\n0\n" ), 4u );
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n" ), 3u );
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n" ), 3u );
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix array real general\n1 1\n1\n2\n" ), 4u );
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix array real general\n1 1 1\n1\n" ), 2u );
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix array real general\n1 1\nnan\n" ), 3u );
    EXPECT_EQ( parse_error_line( "%%MatrixMarket matrix array real symmetric\n2 3\n" ), 2u );
}

TEST( MatrixMarket, BadHeaders )
{
    EXPECT_THROW( parse( "" ), ParseError );
    EXPECT_THROW( parse( "MatrixMarket matrix array real general\n1 1\n1\n" ), ParseError );
    EXPECT_THROW( parse( "%%MatrixMarket vector array real general\n1 1\n1\n" ), ParseError );
    EXPECT_THROW( parse( "%%MatrixMarket matrix dense real general\n1 1\n1\n" ), ParseError );
    EXPECT_THROW( parse( "%%MatrixMarket matrix array quaternion general\n1 1\n1\n" ), ParseError );
    EXPECT_THROW( parse( "%%MatrixMarket matrix array real lopsided\n1 1\n1\n" ), ParseError );

    // banner keywords are case-insensitive
    EXPECT_NO_THROW( parse( "%%MatrixMarket MATRIX Array REAL General\n1 1\n1\n" ) );
}

TEST( MatrixMarket, ComplexFileReadAsRealThrows )
{
    EXPECT_THROW( read_matrix_market< double >( data_dir / "herm.mtx" ), ParseError );
    EXPECT_EQ( read_matrix_market_header( data_dir / "herm.mtx" ).symmetry, MarketSymmetry::hermitian );
    EXPECT_THROW( read_matrix_market< double >( data_dir / "no_such_file.mtx" ), ParseError );
}

TEST( MatrixMarket, FileErrorsNameThePath )
{
    const auto  path = tmp_path( "bad.mtx" );

    {
        std::ofstream  out( path );

        out << "%%MatrixMarket matrix array real general\n1 1\nx\n";
    }

    try
    {
        read_matrix_market< double >( path );
        ADD_FAILURE() << "expected ParseError";
    }
    catch ( const ParseError &  e )
    {
        const std::string  msg = e.what();

        EXPECT_NE( msg.find( path.string() ), std::string::npos );
        EXPECT_NE( msg.find( "line 3" ), std::string::npos );
    }

    std::filesystem::remove( path );
}
