/*!
  \file cost_model.hpp
  \brief Closed-form gate, memory-entry and tick counts for every adder and multiplier design

  Counts are in "special purpose AND gates" (wide trailing-ones detectors) and
  associative-memory entries (stored output patterns of lookup circuits).
  Every formula is exact integer arithmetic; inputs for which a formula would
  not be integral are rejected.
*/

#pragma once

#include "bitcore.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace carrysim
{

enum class design
{
  cascade,
  flash,
  flash_double,
  blocked_double,
  mult_schedule_a,
  mult_schedule_b
};

enum class schedule
{
  a,
  b
};

inline std::string_view to_string( design d )
{
  switch ( d )
  {
  case design::cascade:
    return "cascade";
  case design::flash:
    return "flash";
  case design::flash_double:
    return "flash_double";
  case design::blocked_double:
    return "blocked_double";
  case design::mult_schedule_a:
    return "mult_schedule_a";
  case design::mult_schedule_b:
    return "mult_schedule_b";
  }
  return "unknown";
}

inline std::string_view to_string( schedule s ) { return s == schedule::a ? "A" : "B"; }

struct cost_report
{
  design kind = design::flash;
  std::uint64_t width = 0;
  std::uint64_t special_and_gates = 0;
  std::uint64_t special_circuits = 0; ///< 3:2 circuits plus quantizers (multipliers only)
  std::uint64_t memory_entries = 0;
  std::uint64_t ticks = 0;
};

namespace cost
{

/* per-design tick counts under the uniform-tick model */
inline constexpr std::uint64_t flash_ticks = 2;
inline constexpr std::uint64_t double_width_ticks = 3;
inline constexpr std::uint64_t blocked_ticks = 3;
inline constexpr std::uint64_t quantizer_ticks = 2;
inline constexpr std::uint64_t csa_ticks = 1;

/* the published 64-bit multiplier configuration */
inline constexpr std::uint64_t mult_width = 64;
inline constexpr std::uint64_t entries_per_three_to_two = 8; // 3 input bits -> 2^3 stored patterns
/* ticks for a conventional 128-bit addition in the 3:2-only multiplier; a quoted figure, not derived */
inline constexpr std::uint64_t conventional_128_add_ticks = 15;

} // namespace cost

/*! \brief Increment gates of the k-level cascade adder: k * 2^(k-1) - 1. */
inline std::uint64_t cascade_gates( unsigned k )
{
  detail::require( k >= 1u && k < 60u, "cascade_gates: k out of range" );
  return std::uint64_t{ k } * ( std::uint64_t{ 1 } << ( k - 1u ) ) - 1u;
}

/*! \brief Same count summed level by level: each of the 2^(k-l-1) units of level l uses 2^l + 1 gates. */
inline std::uint64_t cascade_gates_by_level( unsigned k )
{
  detail::require( k >= 1u && k < 60u, "cascade_gates: k out of range" );
  std::uint64_t total = 0;
  for ( unsigned l = 1; l < k; ++l )
  {
    total += ( ( std::uint64_t{ 1 } << l ) + 1u ) * ( std::uint64_t{ 1 } << ( k - l - 1u ) );
  }
  return total;
}

inline std::uint64_t flash_gates( std::uint64_t n )
{
  detail::require( n >= 1u, "flash_gates: n must be positive" );
  return n * ( n + 1u ) / 2u;
}

/*! \brief 2N-bit adder from two pair-leaf N-bit flash adders plus N cross-carry gates: N(N+3)/2. */
inline std::uint64_t double_width_gates( std::uint64_t n )
{
  detail::require( n >= 1u, "double_width_gates: n must be positive" );
  return n * ( n + 3u ) / 2u;
}

namespace detail
{

inline std::uint64_t checked_sqrt_pow4( std::uint64_t n )
{
  require( n >= 1u && is_power_of_two( n ) && ( n & 0x5555555555555555ull ) != 0u, "n = " + std::to_string( n ) + " is not a power of 4" );
  std::uint64_t r = 1;
  while ( r * r < n )
  {
    r <<= 1;
  }
  return r;
}

} // namespace detail

/*! \brief First stage of the blocked 2N-bit adder: sqrt(N) pair-leaf flash blocks of 2 sqrt(N) bits, N sqrt(N) + N/2. */
inline std::uint64_t blocked_first_stage_gates( std::uint64_t n )
{
  auto const r = detail::checked_sqrt_pow4( n );
  detail::require( n >= 4u, "blocked adder needs N >= 4" );
  return n * r + n / 2u;
}

/*! \brief Second stage: sqrt(N) block carries, N sqrt(N) - N + sqrt(N). */
inline std::uint64_t blocked_second_stage_gates( std::uint64_t n )
{
  auto const r = detail::checked_sqrt_pow4( n );
  detail::require( n >= 4u, "blocked adder needs N >= 4" );
  return n * r - n + r;
}

/*! \brief (2N + 1) sqrt(N) - N/2 for the two-level blocked 2N-bit adder. */
inline std::uint64_t blocked_gates( std::uint64_t n )
{
  auto const r = detail::checked_sqrt_pow4( n );
  detail::require( n >= 4u, "blocked adder needs N >= 4" );
  return ( 2u * n + 1u ) * r - n / 2u;
}

/*! \brief Least number of 3:2 stages that can take `from_rows` down to `to_rows`,
 *         i.e. the smallest s with to_rows * (3/2)^s >= from_rows.
 *
 * Evaluated in exact integers so that boundary cases like (3, 2) do not
 * suffer from floating-point logarithms.
 */
inline std::uint64_t consolidation_lower_bound( std::uint64_t from_rows, std::uint64_t to_rows )
{
  detail::require( to_rows >= 1u && from_rows >= to_rows, "consolidation_lower_bound needs from >= to >= 1" );
  std::uint64_t stages = 0;
  wide_value lhs = to_rows;   // to * 3^s
  wide_value rhs = from_rows; // from * 2^s
  while ( lhs < rhs )
  {
    lhs *= 3;
    rhs *= 2;
    ++stages;
  }
  return stages;
}

/*! \brief Hardware tallies of the 64-bit multiplier. */
struct mult_estimate
{
  schedule kind = schedule::a;
  bool quantizer_reuse = true;
  std::uint64_t three_to_two_circuits = 0; ///< schedule A: first consolidation step; schedule B: final step
  std::uint64_t three_to_two_entries = 0;
  std::uint64_t wide_quantizers = 0;       ///< 63-bit -> 6-bit column quantizers
  std::uint64_t narrow_quantizers = 0;     ///< 7-bit -> 3-bit quantizers, only without reuse
  std::uint64_t quantizer_entries = 0;     ///< entries held by the wide quantizers
  std::uint64_t narrow_quantizer_entries = 0;
  std::uint64_t comparison_circuits = 0;   ///< 3:2 circuits schedule A needs beyond schedule B's final step
  std::uint64_t comparison_entries = 0;
};

/*! \brief 3:2 circuits in the first step of schedule A: 21 groups of rows, 1 + 7 + ... + 121. */
inline std::uint64_t three_to_two_first_step_circuits( std::uint64_t rows )
{
  std::uint64_t const groups = rows / 3u;
  std::uint64_t total = 0;
  for ( std::uint64_t g = 0; g < groups; ++g )
  {
    total += 6u * g + 1u;
  }
  return total;
}

inline mult_estimate mult_hardware_estimate( schedule s, std::uint64_t width = cost::mult_width, bool quantizer_reuse = true )
{
  detail::require( width == cost::mult_width, "hardware estimates are defined for 64-bit multiplication only" );

  std::uint64_t const columns = 2u * width; // 128 product columns
  std::uint64_t const first_step = three_to_two_first_step_circuits( width );
  std::uint64_t const final_step = columns; // one 3:2 circuit per column for 3 -> 2

  mult_estimate e;
  e.kind = s;
  e.quantizer_reuse = quantizer_reuse;
  e.comparison_circuits = first_step - final_step;
  e.comparison_entries = e.comparison_circuits * cost::entries_per_three_to_two;
  if ( s == schedule::a )
  {
    e.three_to_two_circuits = first_step;
    e.three_to_two_entries = first_step * cost::entries_per_three_to_two;
    return e;
  }

  e.three_to_two_circuits = final_step;
  e.three_to_two_entries = final_step * cost::entries_per_three_to_two;
  e.wide_quantizers = columns;
  e.quantizer_entries = columns * width; // 64 count levels of 6 bits per column
  if ( !quantizer_reuse )
  {
    e.narrow_quantizers = columns;
    e.narrow_quantizer_entries = columns * 8u; // 8 count levels of 3 bits
  }
  return e;
}

/*! \brief Largest 2^p - 1 not exceeding `rows`: the quantizer fan-in that wastes no output plane. */
inline std::uint64_t quantizer_fan_in( std::uint64_t rows )
{
  detail::require( rows >= 1u, "quantizer_fan_in needs rows >= 1" );
  std::uint64_t m = 1;
  while ( 2u * m + 1u <= rows )
  {
    m = 2u * m + 1u;
  }
  return m;
}

inline std::uint64_t floor_log2( std::uint64_t n )
{
  detail::require( n >= 1u, "floor_log2 of zero" );
  std::uint64_t r = 0;
  while ( n >>= 1u )
  {
    ++r;
  }
  return r;
}

/*! \brief Row counts and tick total a schedule should produce, from the row-count laws alone.
 *
 * A 3:2 stage maps n rows to n - floor(n/3) in one tick. A quantizer stage
 * consumes m rows, emits floor(log2 m) + 1, and takes two ticks. Schedule B
 * quantizes with the largest 2^p - 1 fan-in while more than 3 rows remain,
 * then finishes with 3:2 stages.
 */
struct planned_schedule
{
  std::vector<std::uint64_t> trajectory;
  std::uint64_t ticks = 0;
};

inline planned_schedule plan_schedule( schedule s, std::uint64_t rows )
{
  detail::require( rows >= 2u, "a schedule needs at least 2 rows" );
  planned_schedule p;
  p.trajectory.push_back( rows );
  if ( s == schedule::b )
  {
    while ( rows > 3u )
    {
      auto const m = quantizer_fan_in( rows );
      rows = floor_log2( m ) + 1u + ( rows - m );
      p.ticks += cost::quantizer_ticks;
      p.trajectory.push_back( rows );
    }
  }
  while ( rows > 2u )
  {
    rows -= rows / 3u;
    p.ticks += cost::csa_ticks;
    p.trajectory.push_back( rows );
  }
  return p;
}

inline std::uint64_t consolidation_ticks( schedule s, std::uint64_t rows = cost::mult_width )
{
  return plan_schedule( s, rows ).ticks;
}

/*! \brief Quoted end-to-end accounting for 64-bit multiplication.
 *
 * B: 5 consolidation ticks plus the 3-tick double-width adder.
 * A: the 9-stage lower bound plus a 15-tick conventional 128-bit adder.
 */
inline std::uint64_t end_to_end_ticks( schedule s )
{
  if ( s == schedule::b )
    return consolidation_ticks( s ) + cost::double_width_ticks;
  return consolidation_lower_bound( cost::mult_width, 2u ) + cost::conventional_128_add_ticks;
}

/*! \brief What this simulator measures for schedule A: 10 stages plus the 3-tick double-width adder. */
inline std::uint64_t simulated_end_to_end_ticks( schedule s )
{
  return consolidation_ticks( s ) + cost::double_width_ticks;
}

inline std::uint64_t speedup()
{
  auto const a = end_to_end_ticks( schedule::a );
  auto const b = end_to_end_ticks( schedule::b );
  detail::ensure( a % b == 0u, "speedup is not integral" );
  return a / b;
}

/*! \brief One CostReport for `d` at operand width `width` (bits of each operand). */
inline cost_report cost_of( design d, std::uint64_t width, bool quantizer_reuse = true )
{
  cost_report r;
  r.kind = d;
  r.width = width;
  switch ( d )
  {
  case design::cascade:
  {
    detail::require( width >= 2u && is_power_of_two( width ), "cascade needs a power-of-two width >= 2" );
    auto const k = log2_exact( width );
    r.special_and_gates = cascade_gates( k );
    r.memory_entries = ( width / 2u ) * 16u; // one 16-entry table per 2-bit block
    r.ticks = k;
    break;
  }
  case design::flash:
    r.special_and_gates = flash_gates( width );
    r.ticks = cost::flash_ticks;
    break;
  case design::flash_double:
    detail::require( width >= 2u && width % 2u == 0u, "flash_double needs an even width" );
    r.special_and_gates = double_width_gates( width / 2u );
    r.ticks = cost::double_width_ticks;
    break;
  case design::blocked_double:
    detail::require( width % 2u == 0u, "blocked_double needs an even width" );
    r.special_and_gates = blocked_gates( width / 2u );
    r.ticks = cost::blocked_ticks;
    break;
  case design::mult_schedule_a:
  case design::mult_schedule_b:
  {
    auto const s = d == design::mult_schedule_a ? schedule::a : schedule::b;
    auto const e = mult_hardware_estimate( s, width, quantizer_reuse );
    r.special_circuits = e.three_to_two_circuits + e.wide_quantizers + e.narrow_quantizers;
    r.memory_entries = s == schedule::a ? e.three_to_two_entries : e.quantizer_entries + e.narrow_quantizer_entries;
    r.ticks = end_to_end_ticks( s );
    break;
  }
  }
  return r;
}

} // namespace carrysim
