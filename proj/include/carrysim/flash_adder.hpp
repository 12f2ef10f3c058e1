/*!
  \file flash_adder.hpp
  \brief Two-tick parallel adder built from half-add wires and SC_AND gates

  Tick 1 computes the half-add wires s_i = a_i ^ b_i and c_i = a_i & b_i, with
  an extra wire s_N = 0. Tick 2 evaluates every gate

      SC_AND(i, j) = !s_j & s_{j-1} & ... & s_{i+1} & c_i,   0 <= i < j <= N

  against those wires. Each generated carry c_i fires exactly one gate, and
  that gate complements s_{i+1}..s_j. Firing segments never overlap, so all
  complementations are applied at once. The result is s_N..s_0, with s_N as
  the overflow bit.

  The compositions built on top (double-width and two-level blocked) take
  one extra tick for their cross-block increment.
*/

#pragma once

#include "bitcore.hpp"
#include "cascade_adder.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace carrysim
{

struct half_add_state
{
  std::size_t n = 0;
  bit_vector s; ///< n + 1 wires; s[n] starts at 0
  bit_vector c; ///< n wires
};

/*! \brief A fired gate SC_AND(i, j): carry i is absorbed by complementing bits i+1..j. */
struct firing
{
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==( firing const&, firing const& ) = default;
};

struct fire_set
{
  std::vector<firing> firings; ///< ascending in i
  std::size_t gates_evaluated = 0;
};

struct flash_result
{
  bit_vector sum; ///< n + 1 bits
  unsigned ticks = 0;
  fire_set fires;
};

struct increment_pow2_result
{
  bit_vector sum; ///< n + 1 bits
  unsigned ticks = 0;
};

struct double_width_result
{
  bit_vector sum; ///< 2n + 1 bits
  unsigned ticks = 0;
  bool cross_carry = false;
};

struct blocked_result
{
  bit_vector sum; ///< width + 1 bits
  unsigned ticks = 0;
  std::size_t blocks = 0;
  std::size_t first_stage_gates = 0;
  std::size_t second_stage_gates = 0;
  std::vector<firing> second_stage_firings; ///< (entry bit, end bit), both complemented
};

/*! \brief Tick 1: half-add every bit position. */
inline half_add_state half_add( bit_vector const& a, bit_vector const& b )
{
  detail::require( a.width() == b.width(), "operand widths differ: " + std::to_string( a.width() ) + " vs " + std::to_string( b.width() ) );
  half_add_state state{ a.width(), bit_vector( a.width() + 1u ), bit_vector( a.width() ) };
  for ( std::size_t i = 0; i < a.width(); ++i )
  {
    state.s.set( i, a[i] != b[i] );
    state.c.set( i, a[i] && b[i] );
    detail::ensure( !( state.s[i] && state.c[i] ), "half-add produced 11" );
  }
  return state;
}

/*! \brief Direct evaluation of one gate, reading the wires of `state`. */
inline bool sc_and( half_add_state const& state, std::size_t i, std::size_t j )
{
  detail::require( i < j && j <= state.n, "sc_and requires 0 <= i < j <= N" );
  bool out = !state.s[j] && state.c[i];
  for ( std::size_t l = i + 1; l < j; ++l )
  {
    out = out && state.s[l];
  }
  return out;
}

/*! \brief Evaluates all N(N+1)/2 gates on the half-add wires and returns the ones that fire.
 *
 * For a fixed i the gates share the prefix c_i & s_{i+1} & ... & s_{j-1},
 * which is carried along the row instead of being recomputed.
 */
inline fire_set compute_fire_set( half_add_state const& state )
{
  fire_set out;
  for ( std::size_t i = 0; i < state.n; ++i )
  {
    bool prefix = state.c[i];
    std::size_t fired = 0;
    for ( std::size_t j = i + 1; j <= state.n; ++j )
    {
      ++out.gates_evaluated;
      if ( prefix && !state.s[j] )
      {
        out.firings.push_back( { i, j } );
        ++fired;
      }
      prefix = prefix && state.s[j];
    }
    detail::ensure( fired == ( state.c[i] ? 1u : 0u ), "carry " + std::to_string( i ) + " fired " + std::to_string( fired ) + " gates" );
  }
  return out;
}

/*! \brief Simultaneous complementation of every fired segment (tick 2).
 *
 * Returns the N+1 bit sum; `ticks` counts both ticks of the addition.
 */
inline flash_result resolve( half_add_state const& state )
{
  flash_result out;
  out.fires = compute_fire_set( state );

  std::vector<std::uint8_t> mask( state.n + 1u, 0u );
  for ( auto const& f : out.fires.firings )
  {
    for ( std::size_t p = f.i + 1; p <= f.j; ++p )
    {
      detail::ensure( mask[p] == 0u, "overlapping complementation segments at bit " + std::to_string( p ) );
      mask[p] = 1u;
    }
  }

  out.sum = state.s;
  for ( std::size_t p = 0; p <= state.n; ++p )
  {
    if ( mask[p] != 0u )
      out.sum.flip( p );
  }
  out.ticks = 2;
  return out;
}

/*! \brief Absorbs the carries one at a time in `order`, re-evaluating each carry's gate row on the
 *         already-updated wires.
 *
 * Returns the final wires and the segment end each carry found. When the
 * gates are conflict-free this matches resolve() for every order.
 */
inline std::pair<bit_vector, std::vector<firing>> absorb_sequentially( half_add_state const& state, std::span<std::size_t const> order )
{
  bit_vector wires = state.s;
  std::vector<firing> found;
  for ( auto const i : order )
  {
    detail::require( i < state.n && state.c[i], "order must list generated carries only" );
    std::optional<std::size_t> end;
    for ( std::size_t j = i + 1; j <= state.n; ++j )
    {
      if ( !wires[j] )
      {
        end = j;
        break;
      }
    }
    detail::ensure( end.has_value(), "sequential absorption overflowed" );
    for ( std::size_t p = i + 1; p <= *end; ++p )
    {
      wires.flip( p );
    }
    found.push_back( { i, *end } );
  }
  return { std::move( wires ), std::move( found ) };
}

/*! \brief N-bit addition in 2 ticks; the result carries N+1 bits. */
inline flash_result flash_add( bit_vector const& a, bit_vector const& b )
{
  return resolve( half_add( a, b ) );
}

/*! \brief x + 2^i in one tick.
 *
 * Finds the least j >= i with x_j = 0 (position N counts as 0) and complements
 * bits i..j.
 */
inline increment_pow2_result increment_by_pow2( bit_vector const& x, std::size_t i )
{
  detail::require( i < x.width(), "increment index " + std::to_string( i ) + " out of range" );
  auto y = x.resized( x.width() + 1u );
  std::size_t j = i;
  while ( y[j] )
  {
    ++j;
  }
  for ( std::size_t p = i; p <= j; ++p )
  {
    y.flip( p );
  }
  return { std::move( y ), 1u };
}

/*! \brief 2N-bit addition from two N-bit flash adders plus one increment unit (3 ticks).
 *
 * The halves are added in parallel. If the low half overflows, its carry
 * increments the high sum in the third tick. The high sum is at most
 * 2^(N+1) - 2, so the increment cannot overflow.
 */
inline double_width_result double_width_add( bit_vector const& a_lo, bit_vector const& a_hi, bit_vector const& b_lo, bit_vector const& b_hi )
{
  std::size_t const n = a_lo.width();
  detail::require( a_hi.width() == n && b_lo.width() == n && b_hi.width() == n, "double_width_add halves must share one width" );

  auto const lo = flash_add( a_lo, b_lo );
  auto const hi = flash_add( a_hi, b_hi );

  bool const cross = lo.sum[n];
  auto const inc = increment_unit( hi.sum.slice( 0, n ), hi.sum[n], cross );

  bit_vector top( 1 );
  top.set( 0, inc.high_carry );
  return { bit_vector::concat( lo.sum.slice( 0, n ), bit_vector::concat( inc.word, top ) ), lo.ticks + 1u, cross };
}

/*! \brief Convenience form taking full 2N-bit operands. */
inline double_width_result double_width_add( bit_vector const& a, bit_vector const& b )
{
  detail::require( a.width() == b.width(), "operand widths differ" );
  detail::require( a.width() >= 2u && a.width() % 2u == 0u, "double_width_add needs an even width" );
  std::size_t const n = a.width() / 2u;
  return double_width_add( a.slice( 0, n ), a.slice( n, n ), b.slice( 0, n ), b.slice( n, n ) );
}

namespace detail
{

inline std::size_t integer_sqrt_exact( std::size_t n )
{
  std::size_t r = 0;
  while ( ( r + 1 ) * ( r + 1 ) <= n )
  {
    ++r;
  }
  require( r * r == n, std::to_string( n ) + " is not a perfect square" );
  return r;
}

inline bool is_power_of_four( std::size_t n ) noexcept
{
  return is_power_of_two( n ) && ( n & 0x5555555555555555ull ) != 0u;
}

} // namespace detail

/*! \brief Two-level blocked addition of 2N-bit operands (3 ticks).
 *
 * Stage one flash-adds `blocks` equal slices independently (2 ticks). Stage
 * two, in one tick, absorbs each block carry into the bits above it with a
 * trailing-ones gate row reaching up to the overflow bit. A carry can only
 * travel through an all-ones block, and such a block never carries out
 * itself, so the rows never overlap.
 *
 * With `pair_leaf` the first-stage gate tally is halved, modeling a leaf
 * lookup that consumes two operand bits at a time. The computed sum is the
 * same either way.
 *
 * \param blocks number of blocks; 0 selects sqrt(N)
 */
inline blocked_result blocked_add( bit_vector const& a, bit_vector const& b, std::size_t blocks = 0, bool pair_leaf = true )
{
  detail::require( a.width() == b.width(), "operand widths differ" );
  std::size_t const width = a.width();
  detail::require( width % 2u == 0u && detail::is_power_of_four( width / 2u ) && width / 2u >= 4u,
                   "blocked_add needs width 2N with N a power of 4 (N >= 4), got " + std::to_string( width ) );
  if ( blocks == 0u )
  {
    blocks = detail::integer_sqrt_exact( width / 2u );
  }
  detail::require( width % blocks == 0u, "width " + std::to_string( width ) + " is not divisible into " + std::to_string( blocks ) + " blocks" );
  std::size_t const bw = width / blocks;
  detail::require( !pair_leaf || ( bw * ( bw + 1u ) ) % 4u == 0u, "pair-leaf tally needs block width divisible by 4" );

  blocked_result out;
  out.blocks = blocks;

  // stage one: independent flash adders
  bit_vector wires( width + 1u ); // wires[width] is the overflow bit, initially 0
  std::vector<std::uint8_t> block_carry( blocks, 0u );
  for ( std::size_t m = 0; m < blocks; ++m )
  {
    auto const r = flash_add( a.slice( m * bw, bw ), b.slice( m * bw, bw ) );
    for ( std::size_t p = 0; p < bw; ++p )
    {
      wires.set( m * bw + p, r.sum[p] );
    }
    block_carry[m] = r.sum[bw] ? 1u : 0u;
    out.first_stage_gates += pair_leaf ? r.fires.gates_evaluated / 2u : r.fires.gates_evaluated;
  }

  // stage two: one trailing-ones gate row per block carry, all read the stage-one wires
  std::vector<std::uint8_t> mask( width + 1u, 0u );
  for ( std::size_t m = 0; m < blocks; ++m )
  {
    std::size_t const entry = ( m + 1u ) * bw;
    bool prefix = block_carry[m] != 0u;
    std::size_t fired = 0;
    for ( std::size_t j = entry; j <= width; ++j )
    {
      ++out.second_stage_gates;
      if ( prefix && !wires[j] )
      {
        out.second_stage_firings.push_back( { entry, j } );
        ++fired;
        for ( std::size_t p = entry; p <= j; ++p )
        {
          detail::ensure( mask[p] == 0u, "overlapping block-carry segments at bit " + std::to_string( p ) );
          mask[p] = 1u;
        }
      }
      prefix = prefix && wires[j];
    }
    detail::ensure( fired == block_carry[m], "block carry " + std::to_string( m ) + " fired " + std::to_string( fired ) + " gates" );
  }

  out.sum = wires;
  for ( std::size_t p = 0; p <= width; ++p )
  {
    if ( mask[p] != 0u )
      out.sum.flip( p );
  }
  out.ticks = 3;
  return out;
}

} // namespace carrysim
