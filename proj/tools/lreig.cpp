#include <lreig/cli.hpp>

int
main ( int     argc,
       char ** argv )
{
    return lreig::cli::run( argc, argv );
}
