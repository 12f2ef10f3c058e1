/*!
  \file csa_multiplier.hpp
  \brief Partial-product multiplication with 3:2 and quantizer consolidation stages

  An N x N multiplication starts from N partial-product rows of 2N bits (row i
  is a << i when b_i is set, zero otherwise). Consolidation stages shrink the
  row set while preserving its total:

  - a 3:2 stage compresses each consecutive triple of rows into a sum row and
    a shifted carry row (1 tick);
  - a quantizer stage counts the ones in every column of m rows and writes
    the count's bits back as floor(log2 m) + 1 bit-plane rows (2 ticks).

  The last two rows go through the double-width flash adder (3 ticks).
*/

#pragma once

#include "bitcore.hpp"
#include "cost_model.hpp"
#include "flash_adder.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace carrysim
{

/*! \brief Equal-width addend rows at absolute bit positions. */
struct row_set
{
  std::size_t width = 0;
  std::vector<bit_vector> rows;

  wide_value total() const
  {
    wide_value sum = 0;
    for ( auto const& r : rows )
    {
      sum += to_value( r );
    }
    return sum;
  }
};

enum class stage_kind
{
  csa_3_2,
  quantizer
};

inline std::string_view to_string( stage_kind k ) { return k == stage_kind::csa_3_2 ? "csa_3_2" : "quantizer"; }

struct stage_record
{
  stage_kind kind = stage_kind::csa_3_2;
  std::size_t rows_in = 0;
  std::size_t rows_out = 0;
  std::size_t left_out = 0;
  unsigned ticks = 0;
  std::size_t circuits_used = 0; ///< bit-level 3:2 circuits, or column quantizers
  std::size_t capacity = 0;      ///< quantizer fan-in; 0 for 3:2 stages
};

struct schedule_report
{
  schedule kind = schedule::a;
  std::vector<stage_record> stages;
  std::vector<std::size_t> row_trajectory;
  unsigned total_ticks = 0;
};

struct multiply_result
{
  bit_vector product; ///< 2N bits
  unsigned ticks = 0;  ///< consolidation plus final addition
  schedule_report report;
};

namespace detail
{

inline void check_rows( row_set const& rs )
{
  for ( auto const& r : rs.rows )
  {
    require( r.width() == rs.width, "row width " + std::to_string( r.width() ) + " differs from row set width " + std::to_string( rs.width ) );
  }
}

} // namespace detail

inline row_set partial_products( bit_vector const& a, bit_vector const& b )
{
  detail::require( a.width() == b.width(), "operand widths differ" );
  std::size_t const n = a.width();
  row_set out{ 2 * n, {} };
  out.rows.reserve( n );
  for ( std::size_t i = 0; i < n; ++i )
  {
    bit_vector row( 2 * n );
    if ( b[i] )
    {
      for ( std::size_t j = 0; j < n; ++j )
      {
        row.set( i + j, a[j] );
      }
    }
    out.rows.push_back( std::move( row ) );
  }
  return out;
}

/*! \brief Row of full adders: (sum, carry << 1) with sum + carry == r1 + r2 + r3. */
inline std::pair<bit_vector, bit_vector> csa_3_2( bit_vector const& r1, bit_vector const& r2, bit_vector const& r3 )
{
  std::size_t const w = r1.width();
  detail::require( r2.width() == w && r3.width() == w, "csa_3_2 rows must share one width" );
  bit_vector sum( w );
  bit_vector carry( w );
  for ( std::size_t p = 0; p < w; ++p )
  {
    int const ones = int( r1[p] ) + int( r2[p] ) + int( r3[p] );
    sum.set( p, ( ones & 1 ) != 0 );
    if ( ones >= 2 )
    {
      detail::require( p + 1u < w, "3:2 carry overflows row width " + std::to_string( w ) );
      carry.set( p + 1u, true );
    }
  }
  return { std::move( sum ), std::move( carry ) };
}

/*! \brief One 3:2 stage: consecutive triples compressed, the n mod 3 trailing rows left out. */
inline std::pair<row_set, stage_record> csa_stage( row_set const& rows )
{
  detail::check_rows( rows );
  std::size_t const n = rows.rows.size();
  detail::require( n >= 3u, "csa_stage needs at least 3 rows, got " + std::to_string( n ) );

  std::size_t const triples = n / 3u;
  row_set out{ rows.width, {} };
  out.rows.reserve( n - triples );
  for ( std::size_t t = 0; t < triples; ++t )
  {
    auto [s, c] = csa_3_2( rows.rows[3 * t], rows.rows[3 * t + 1], rows.rows[3 * t + 2] );
    out.rows.push_back( std::move( s ) );
    out.rows.push_back( std::move( c ) );
  }
  for ( std::size_t r = 3 * triples; r < n; ++r )
  {
    out.rows.push_back( rows.rows[r] );
  }

  stage_record rec{ stage_kind::csa_3_2, n, out.rows.size(), n - 3 * triples, 1u, triples * rows.width, 0u };
  detail::ensure( rec.rows_out == n - n / 3u, "3:2 row-count law violated" );
  return { std::move( out ), rec };
}

/*! \brief Quantizer stage over the first rows.size() - left_out rows.
 *
 * Each column's count of ones (at most `capacity`) is split into bit planes:
 * bit q of count(p) lands in column p + q of output row q. The trailing
 * `left_out` rows pass through unchanged.
 */
inline std::pair<row_set, stage_record> quantize_columns( row_set const& rows, std::size_t capacity, std::size_t left_out = 0 )
{
  detail::check_rows( rows );
  detail::require( capacity >= 3u, "quantizer capacity must be at least 3" );
  detail::require( left_out < rows.rows.size(), "quantizer must consume at least one row" );
  std::size_t const consumed = rows.rows.size() - left_out;
  detail::require( consumed <= capacity, "quantizer capacity " + std::to_string( capacity ) + " exceeded by " + std::to_string( consumed ) + " rows" );

  std::size_t const planes = static_cast<std::size_t>( floor_log2( consumed ) ) + 1u;
  std::size_t const w = rows.width;
  row_set out{ w, std::vector<bit_vector>( planes, bit_vector( w ) ) };

  for ( std::size_t p = 0; p < w; ++p )
  {
    std::size_t count = 0;
    for ( std::size_t r = 0; r < consumed; ++r )
    {
      count += rows.rows[r][p] ? 1u : 0u;
    }
    detail::ensure( count <= capacity, "column count exceeds quantizer levels" );
    for ( std::size_t q = 0; q < planes; ++q )
    {
      if ( ( ( count >> q ) & 1u ) == 0u )
        continue;
      detail::require( p + q < w, "quantizer output overflows row width " + std::to_string( w ) );
      out.rows[q].set( p + q, true );
    }
  }
  for ( std::size_t r = consumed; r < rows.rows.size(); ++r )
  {
    out.rows.push_back( rows.rows[r] );
  }

  stage_record rec{ stage_kind::quantizer, rows.rows.size(), out.rows.size(), left_out, 2u, w, capacity };
  return { std::move( out ), rec };
}

namespace detail
{

class schedule_runner
{
public:
  schedule_runner( row_set rows, schedule kind ) : rows_( std::move( rows ) ), expected_( rows_.total() )
  {
    report_.kind = kind;
    report_.row_trajectory.push_back( rows_.rows.size() );
  }

  void apply( std::pair<row_set, stage_record> step )
  {
    ensure( step.first.total() == expected_, "consolidation stage changed the row total" );
    rows_ = std::move( step.first );
    report_.total_ticks += step.second.ticks;
    report_.row_trajectory.push_back( rows_.rows.size() );
    report_.stages.push_back( step.second );
  }

  row_set const& rows() const noexcept { return rows_; }

  std::pair<row_set, schedule_report> finish() &&
  {
    ensure( rows_.rows.size() == 2u, "schedule did not end at two rows" );
    return { std::move( rows_ ), std::move( report_ ) };
  }

private:
  row_set rows_;
  wide_value expected_;
  schedule_report report_;
};

inline row_set pad_to_two( row_set rows )
{
  detail::check_rows( rows );
  require( rows.width >= 1u, "row set width must be positive" );
  while ( rows.rows.size() < 2u )
  {
    rows.rows.emplace_back( rows.width );
  }
  return rows;
}

} // namespace detail

/*! \brief 3:2 stages only, until two rows remain (64 rows: 10 stages, 10 ticks). */
inline std::pair<row_set, schedule_report> run_schedule_a( row_set rows )
{
  detail::schedule_runner run( detail::pad_to_two( std::move( rows ) ), schedule::a );
  while ( run.rows().rows.size() > 2u )
  {
    run.apply( csa_stage( run.rows() ) );
  }
  return std::move( run ).finish();
}

/*! \brief Quantizer stages while more than 3 rows remain, then 3:2 stages.
 *
 * Each quantizer consumes the first 2^p - 1 rows (the largest such count
 * available) and leaves the rest out; from 64 rows this gives 64 -> 7 -> 3 -> 2
 * in 2 + 2 + 1 ticks.
 */
inline std::pair<row_set, schedule_report> run_schedule_b( row_set rows )
{
  detail::schedule_runner run( detail::pad_to_two( std::move( rows ) ), schedule::b );
  while ( run.rows().rows.size() > 3u )
  {
    std::size_t const n = run.rows().rows.size();
    auto const fan_in = static_cast<std::size_t>( quantizer_fan_in( n ) );
    run.apply( quantize_columns( run.rows(), fan_in, n - fan_in ) );
  }
  while ( run.rows().rows.size() > 2u )
  {
    run.apply( csa_stage( run.rows() ) );
  }
  return std::move( run ).finish();
}

inline std::pair<row_set, schedule_report> run_schedule( row_set rows, schedule s )
{
  return s == schedule::a ? run_schedule_a( std::move( rows ) ) : run_schedule_b( std::move( rows ) );
}

/*! \brief Full N x N product; N must be a power of two in [4, 64]. */
inline multiply_result multiply( bit_vector const& a, bit_vector const& b, schedule s )
{
  detail::require( a.width() == b.width(), "operand widths differ" );
  std::size_t const n = a.width();
  detail::require( is_power_of_two( n ) && n >= 4u && n <= 64u, "unsupported multiplier width " + std::to_string( n ) );

  auto [rows, report] = run_schedule( partial_products( a, b ), s );
  auto const add = double_width_add( rows.rows[0], rows.rows[1] );
  detail::ensure( !add.sum[2 * n], "product overflowed 2N bits" );

  multiply_result out;
  out.product = add.sum.slice( 0, 2 * n );
  out.ticks = report.total_ticks + add.ticks;
  out.report = std::move( report );
  return out;
}

} // namespace carrysim
