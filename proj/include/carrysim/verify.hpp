/*!
  \file verify.hpp
  \brief Oracle sweeps: every design checked against big-integer arithmetic

  Widths up to `exhaustive_limit` bits are swept over all operand pairs
  (a outer, b inner). Wider designs draw `trials` pairs from a std::mt19937_64
  seeded with `seed`, a operand before b, each operand as ceil(width / 64)
  words, low word first. The first counterexample is the one with the lowest
  case index.
*/

#pragma once

#include "bitcore.hpp"
#include "cascade_adder.hpp"
#include "cost_model.hpp"
#include "csa_multiplier.hpp"
#include "flash_adder.hpp"

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <ios>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace carrysim
{

enum class circuit
{
  cascade,
  flash,
  flash_double,
  blocked_double,
  mult
};

inline std::string_view to_string( circuit c )
{
  switch ( c )
  {
  case circuit::cascade:
    return "cascade";
  case circuit::flash:
    return "flash";
  case circuit::flash_double:
    return "flash_double";
  case circuit::blocked_double:
    return "blocked_double";
  case circuit::mult:
    return "mult";
  }
  return "unknown";
}

inline constexpr std::string_view sweep_generator = "mt19937_64";
inline constexpr std::size_t exhaustive_limit = 8;

/*! \brief Throws invalid_argument when `width` is not a legal operand width for `c`. */
inline void validate_width( circuit c, std::size_t width )
{
  switch ( c )
  {
  case circuit::cascade:
    detail::require( width >= 2u && is_power_of_two( width ), "cascade needs a power-of-two width >= 2" );
    break;
  case circuit::flash:
    detail::require( width >= 1u, "flash needs a positive width" );
    break;
  case circuit::flash_double:
    detail::require( width >= 2u && width % 2u == 0u, "flash_double needs an even width >= 2" );
    break;
  case circuit::blocked_double:
    detail::require( width % 2u == 0u && detail::is_power_of_four( width / 2u ) && width / 2u >= 4u,
                     "blocked_double needs width 2N with N a power of 4 and N >= 4" );
    break;
  case circuit::mult:
    detail::require( is_power_of_two( width ) && width >= 4u && width <= 64u, "mult needs a power-of-two width in [4, 64]" );
    break;
  }
}

/*! \brief Result of running one design on one operand pair. */
struct case_outcome
{
  wide_value got = 0;
  wide_value expected = 0;
  unsigned ticks = 0;
  unsigned expected_ticks = 0;
  std::string fault; ///< set when the model raised an integrity error

  bool passed() const { return fault.empty() && got == expected && ticks == expected_ticks; }
};

inline case_outcome run_case( circuit c, bit_vector const& a, bit_vector const& b, schedule s = schedule::b )
{
  case_outcome out;
  auto const va = to_value( a );
  auto const vb = to_value( b );
  out.expected = c == circuit::mult ? oracle_mul( va, vb ) : oracle_add( va, vb );
  try
  {
    switch ( c )
    {
    case circuit::cascade:
    {
      auto const r = cascade_add( a, b, { .retain_trace = false, .check_invariants = true } );
      out.got = to_value( r.sum ) + ( wide_value( r.carry ? 1 : 0 ) << a.width() );
      out.ticks = r.ticks;
      out.expected_ticks = log2_exact( a.width() );
      break;
    }
    case circuit::flash:
    {
      auto const r = flash_add( a, b );
      out.got = to_value( r.sum );
      out.ticks = r.ticks;
      out.expected_ticks = cost::flash_ticks;
      break;
    }
    case circuit::flash_double:
    {
      auto const r = double_width_add( a, b );
      out.got = to_value( r.sum );
      out.ticks = r.ticks;
      out.expected_ticks = cost::double_width_ticks;
      break;
    }
    case circuit::blocked_double:
    {
      auto const r = blocked_add( a, b );
      out.got = to_value( r.sum );
      out.ticks = r.ticks;
      out.expected_ticks = cost::blocked_ticks;
      break;
    }
    case circuit::mult:
    {
      auto const r = multiply( a, b, s );
      out.got = to_value( r.product );
      out.ticks = r.ticks;
      out.expected_ticks = static_cast<unsigned>( consolidation_ticks( s, a.width() ) + cost::double_width_ticks );
      break;
    }
    }
  }
  catch ( model_integrity_error const& e )
  {
    out.fault = e.what();
  }
  return out;
}

struct counterexample
{
  std::uint64_t index = 0;
  std::string a_hex;
  std::string b_hex;
  std::string expected_hex;
  std::string got_hex;
  unsigned ticks = 0;
  unsigned expected_ticks = 0;
  std::string fault;
};

struct verify_config
{
  circuit kind = circuit::flash;
  std::size_t width = 8;
  schedule sched = schedule::b;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

struct verify_summary
{
  verify_config config;
  bool exhaustive = false;
  std::uint64_t cases = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::optional<counterexample> first_failure;

  bool ok() const noexcept { return failed == 0u; }
};

namespace detail
{

inline std::string hex_of( wide_value const& v )
{
  std::string s = v.str( 0, std::ios_base::hex );
  for ( auto& ch : s )
  {
    ch = static_cast<char>( std::tolower( static_cast<unsigned char>( ch ) ) );
  }
  return s;
}

inline void tally( verify_summary& summary, std::uint64_t index, bit_vector const& a, bit_vector const& b, case_outcome const& r )
{
  ++summary.cases;
  if ( r.passed() )
  {
    ++summary.passed;
    return;
  }
  ++summary.failed;
  if ( !summary.first_failure )
  {
    summary.first_failure = counterexample{ index, to_hex( a ), to_hex( b ), hex_of( r.expected ), hex_of( r.got ), r.ticks, r.expected_ticks, r.fault };
  }
}

} // namespace detail

inline verify_summary verify( verify_config const& cfg )
{
  validate_width( cfg.kind, cfg.width );
  verify_summary summary;
  summary.config = cfg;
  summary.exhaustive = cfg.width <= exhaustive_limit;

  if ( summary.exhaustive )
  {
    std::uint64_t const span = std::uint64_t{ 1 } << cfg.width;
    for ( std::uint64_t x = 0; x < span; ++x )
    {
      auto const a = bit_vector::from_u64( x, cfg.width );
      for ( std::uint64_t y = 0; y < span; ++y )
      {
        auto const b = bit_vector::from_u64( y, cfg.width );
        detail::tally( summary, x * span + y, a, b, run_case( cfg.kind, a, b, cfg.sched ) );
      }
    }
    return summary;
  }

  detail::require( cfg.trials >= 1u, "trials must be at least 1" );
  std::mt19937_64 rng( cfg.seed );
  for ( std::uint64_t t = 0; t < cfg.trials; ++t )
  {
    auto const a = random_bit_vector( cfg.width, rng );
    auto const b = random_bit_vector( cfg.width, rng );
    detail::tally( summary, t, a, b, run_case( cfg.kind, a, b, cfg.sched ) );
  }
  return summary;
}

} // namespace carrysim
