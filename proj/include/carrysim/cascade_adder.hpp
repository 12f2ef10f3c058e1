/*!
  \file cascade_adder.hpp
  \brief The k-stage merge-style parallel adder for N = 2^k bits

  Level 1 adds 2-bit blocks with a 16-entry lookup table. Each later level
  pairs adjacent blocks: the even block's sum becomes the low half unchanged,
  and the odd block (with its carry as top bit) is incremented by the even
  block's carry using a trailing-ones increment unit. All units of a level
  fire in the same tick, so an N-bit addition takes k ticks.
*/

#pragma once

#include "bitcore.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace carrysim
{

/*! \brief Sum/carry wires after one level of the cascade.
 *
 * At `level` l the N sum bits form 2^(k-l) blocks of 2^l bits, each with one
 * carry. The original operands are kept so the block-sum identity
 * `carry * 2^(2^l) + block(sums) == block(a) + block(b)` can be audited.
 */
struct cascade_state
{
  unsigned k = 0;
  unsigned level = 0;
  bit_vector sums;
  std::vector<std::uint8_t> carries;
  bit_vector a;
  bit_vector b;

  std::size_t block_width() const noexcept { return std::size_t{ 1 } << level; }
};

struct cascade_trace
{
  std::vector<cascade_state> states;
  unsigned ticks = 0;
};

struct cascade_result
{
  bit_vector sum;
  bool carry = false;
  unsigned ticks = 0;
  cascade_trace trace; ///< empty unless requested
};

struct cascade_options
{
  bool retain_trace = true;
  bool check_invariants = true;
};

struct increment_result
{
  bit_vector word;
  bool high_carry = false;
};

namespace detail
{

/* (a1 a0 b1 b0) -> (c s1 s0); the programmable logic array of the first level */
inline constexpr std::array<std::uint8_t, 16> pair_add_table = [] {
  std::array<std::uint8_t, 16> table{};
  for ( unsigned idx = 0; idx < 16u; ++idx )
  {
    table[idx] = static_cast<std::uint8_t>( ( idx >> 2 ) + ( idx & 3u ) );
  }
  return table;
}();

inline std::uint64_t block_u64( bit_vector const& v, std::size_t lo, std::size_t len )
{
  std::uint64_t out = 0;
  for ( std::size_t j = len; j-- > 0; )
  {
    out = ( out << 1 ) | static_cast<std::uint64_t>( v[lo + j] );
  }
  return out;
}

inline wide_value block_wide( bit_vector const& v, std::size_t lo, std::size_t len )
{
  return to_value( v.slice( lo, len ) );
}

} // namespace detail

/*! \brief Throws model_integrity_error unless every block of `state` satisfies the block-sum identity. */
inline void check_block_sums( cascade_state const& state )
{
  std::size_t const w = state.block_width();
  for ( std::size_t i = 0; i < state.carries.size(); ++i )
  {
    std::size_t const lo = i * w;
    bool ok = false;
    if ( w <= 62u )
    {
      auto const lhs = ( std::uint64_t{ state.carries[i] } << w ) + detail::block_u64( state.sums, lo, w );
      ok = lhs == detail::block_u64( state.a, lo, w ) + detail::block_u64( state.b, lo, w );
    }
    else
    {
      wide_value lhs = wide_value( state.carries[i] ) << w;
      lhs += detail::block_wide( state.sums, lo, w );
      ok = lhs == detail::block_wide( state.a, lo, w ) + detail::block_wide( state.b, lo, w );
    }
    detail::ensure( ok, "block-sum identity violated at level " + std::to_string( state.level ) + ", block " + std::to_string( i ) );
  }
}

/*! \brief Level-1 state: every 2-bit block of a and b added by table lookup (1 tick). */
inline cascade_state leaf_init( bit_vector const& a, bit_vector const& b )
{
  detail::require( a.width() == b.width(), "operand widths differ" );
  detail::require( is_power_of_two( a.width() ) && a.width() >= 2u, "cascade width must be a power of two >= 2" );

  cascade_state state;
  state.k = log2_exact( a.width() );
  state.level = 1;
  state.sums = bit_vector( a.width() );
  state.carries.assign( a.width() / 2u, 0u );
  state.a = a;
  state.b = b;

  for ( std::size_t i = 0; i < a.width() / 2u; ++i )
  {
    unsigned const idx = ( static_cast<unsigned>( a[2 * i + 1] ) << 3 ) | ( static_cast<unsigned>( a[2 * i] ) << 2 ) |
                         ( static_cast<unsigned>( b[2 * i + 1] ) << 1 ) | static_cast<unsigned>( b[2 * i] );
    auto const entry = detail::pair_add_table[idx];
    state.sums.set( 2 * i, ( entry & 1u ) != 0u );
    state.sums.set( 2 * i + 1, ( entry & 2u ) != 0u );
    state.carries[i] = static_cast<std::uint8_t>( entry >> 2 );
  }
  return state;
}

/*! \brief Adds `inc` to the (width+1)-bit integer high_carry:word in one tick.
 *
 * Locates the least index j in [0, width] whose bit is 0 with every lower bit
 * 1 (index `width` is the high carry) and complements bits 0..j. Uses
 * width + 1 AND gates. Requires word <= 2^width - 2 whenever high_carry is set
 * and inc is 1, which is exactly when such a j exists.
 */
inline increment_result increment_unit( bit_vector const& word, bool high_carry, bool inc )
{
  increment_result out{ word, high_carry };
  if ( !inc )
  {
    return out;
  }

  std::size_t const w = word.width();
  auto bit_at = [&]( std::size_t j ) { return j == w ? high_carry : word[j]; };

  // gate j fires when bit j is 0 and bits 0..j-1 are all 1
  std::optional<std::size_t> zero_at;
  for ( std::size_t j = 0; j <= w; ++j )
  {
    if ( !bit_at( j ) )
    {
      zero_at = j;
      break;
    }
  }
  detail::ensure( zero_at.has_value(), "increment unit saturated: word is all ones with high carry set" );

  for ( std::size_t j = 0; j <= *zero_at; ++j )
  {
    if ( j == w )
      out.high_carry = !out.high_carry;
    else
      out.word.flip( j );
  }
  return out;
}

/*! \brief One parallel level: level l -> level l + 1 (1 tick). */
inline cascade_state cascade_step( cascade_state const& state )
{
  detail::require( state.level >= 1u && state.level < state.k, "cascade_step called at the final level" );

  std::size_t const w = state.block_width();
  cascade_state next;
  next.k = state.k;
  next.level = state.level + 1u;
  next.sums = state.sums;
  next.carries.assign( state.carries.size() / 2u, 0u );
  next.a = state.a;
  next.b = state.b;

  for ( std::size_t i = 0; i < next.carries.size(); ++i )
  {
    std::size_t const odd_lo = ( 2 * i + 1 ) * w;
    auto const odd_block = state.sums.slice( odd_lo, w );
    bool const odd_carry = state.carries[2 * i + 1] != 0u;

    // an odd block can only carry out if its sum is not all ones
    detail::ensure( !odd_carry || !odd_block.all_ones(), "saturation bound violated at level " + std::to_string( state.level ) );

    auto const r = increment_unit( odd_block, odd_carry, state.carries[2 * i] != 0u );
    for ( std::size_t j = 0; j < w; ++j )
    {
      next.sums.set( odd_lo + j, r.word[j] );
    }
    next.carries[i] = r.high_carry ? 1u : 0u;
  }
  return next;
}

/*! \brief Full N-bit addition; ticks = log2(N). */
inline cascade_result cascade_add( bit_vector const& a, bit_vector const& b, cascade_options const& opts = {} )
{
  cascade_result result;
  auto state = leaf_init( a, b );
  result.ticks = 1;

  auto record = [&]( cascade_state const& s ) {
    if ( opts.check_invariants )
      check_block_sums( s );
    if ( opts.retain_trace )
      result.trace.states.push_back( s );
  };

  record( state );
  while ( state.level < state.k )
  {
    state = cascade_step( state );
    ++result.ticks;
    record( state );
  }

  detail::ensure( result.ticks == state.k, "cascade tick count differs from log2(N)" );
  result.trace.ticks = opts.retain_trace ? result.ticks : 0u;
  result.sum = state.sums;
  result.carry = state.carries.front() != 0u;
  return result;
}

} // namespace carrysim
