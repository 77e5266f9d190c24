#ifndef LREIG_SPECTRUM_HPP
#define LREIG_SPECTRUM_HPP

//
// multiset comparison of eigenvalue lists
//

#include <algorithm>
#include <limits>
#include <vector>

#include <lreig/densekit.hpp>

namespace lreig {

// lexicographic (real, imag)
inline
bool
lex_less ( const complex_t &  a,
           const complex_t &  b )
{
    return a.real() < b.real() || ( a.real() == b.real() && a.imag() < b.imag() );
}

inline
std::vector< complex_t >
to_std_vector ( const ComplexVector &  v )
{
    return { v.data(), v.data() + v.size() };
}

// descending modulus, ties by descending (real, imag)
inline
void
sort_by_modulus ( std::vector< complex_t > &  v )
{
    std::stable_sort( v.begin(), v.end(), [] ( const complex_t &  a, const complex_t &  b )
    {
        if ( std::abs( a ) != std::abs( b ) ) return std::abs( a ) > std::abs( b );
        return lex_less( b, a );
    } );
}

struct SpectrumComparison
{
    bool    same_size          = false;
    // max over pairs of |a - b| / max(|a|, |b|, floor)
    double  max_relative_error = std::numeric_limits< double >::infinity();
    // max over pairs of |a - b|
    double  max_abs_error      = std::numeric_limits< double >::infinity();

    bool within ( double  rtol ) const { return same_size && max_relative_error <= rtol; }
};

//
// pair two eigenvalue multisets: both sorted lexicographically, then each
// entry of the first list (in order) takes the nearest unmatched entry of
// the second
//
inline
SpectrumComparison
compare_spectra ( std::vector< complex_t >  a,
                  std::vector< complex_t >  b,
                  double                    floor = std::numeric_limits< double >::min() )
{
    SpectrumComparison  res;

    res.same_size = ( a.size() == b.size() );

    if ( ! res.same_size )
        return res;

    std::sort( a.begin(), a.end(), lex_less );
    std::sort( b.begin(), b.end(), lex_less );

    std::vector< bool >  used( b.size(), false );

    res.max_relative_error = 0.0;
    res.max_abs_error      = 0.0;

    for ( const auto &  x : a )
    {
        std::size_t  best  = b.size();
        double       bestd = std::numeric_limits< double >::infinity();

        for ( std::size_t  j = 0; j < b.size(); ++j )
        {
            if ( used[ j ] ) continue;

            const double  d = std::abs( x - b[ j ] );

            if ( d < bestd ) { bestd = d; best = j; }
        }

        used[ best ] = true;

        const double  denom = std::max( { std::abs( x ), std::abs( b[ best ] ), floor } );

        res.max_abs_error      = std::max( res.max_abs_error, bestd );
        res.max_relative_error = std::max( res.max_relative_error, bestd / denom );
    }

    return res;
}

} // namespace lreig

#endif // LREIG_SPECTRUM_HPP
