#ifndef LREIG_LREIG_HPP
#define LREIG_LREIG_HPP

#include <lreig/error.hpp>
#include <lreig/densekit.hpp>
#include <lreig/spectrum.hpp>
#include <lreig/lowrank.hpp>
#include <lreig/symmetric.hpp>
#include <lreig/jordan.hpp>
#include <lreig/factorize.hpp>
#include <lreig/io/matrix_market.hpp>

#endif // LREIG_LREIG_HPP
