#include <carrysim/csa_multiplier.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace carrysim;

namespace
{

bit_vector u( std::uint64_t x, std::size_t n ) { return bit_vector::from_u64( x, n ); }

row_set rows_of( std::size_t width, std::initializer_list<std::uint64_t> values )
{
  row_set rs{ width, {} };
  for ( auto v : values )
    rs.rows.push_back( u( v, width ) );
  return rs;
}

row_set random_rows( std::size_t count, std::size_t width, std::size_t live_bits, std::mt19937_64& rng )
{
  row_set rs{ width, {} };
  for ( std::size_t r = 0; r < count; ++r )
    rs.rows.push_back( random_bit_vector( live_bits, rng ).resized( width ) );
  return rs;
}

} // namespace

TEST( partial_products, examples )
{
  auto const zero = partial_products( u( 13, 4 ), u( 0, 4 ) );
  ASSERT_EQ( zero.rows.size(), 4u );
  for ( auto const& r : zero.rows )
    EXPECT_TRUE( r.is_zero() );

  auto const pp = partial_products( u( 5, 4 ), u( 3, 4 ) );
  EXPECT_EQ( pp.width, 8u );
  ASSERT_EQ( pp.rows.size(), 4u );
  EXPECT_EQ( to_binary_string( pp.rows[0] ), "00000101" );
  EXPECT_EQ( to_binary_string( pp.rows[1] ), "00001010" );
  EXPECT_TRUE( pp.rows[2].is_zero() );
  EXPECT_TRUE( pp.rows[3].is_zero() );
  EXPECT_EQ( pp.total(), 15 );

  EXPECT_EQ( partial_products( u( 11, 4 ), u( 1, 4 ) ).total(), 11 );
  EXPECT_THROW( partial_products( u( 1, 4 ), u( 1, 5 ) ), invalid_argument );
}

TEST( partial_products, columns_hold_cauchy_terms )
{
  std::mt19937_64 rng( 17 );
  auto const a = random_bit_vector( 16, rng );
  auto const b = random_bit_vector( 16, rng );
  auto const pp = partial_products( a, b );
  for ( std::size_t col = 0; col < 32; ++col )
  {
    std::size_t column_ones = 0;
    for ( auto const& r : pp.rows )
      column_ones += r[col] ? 1u : 0u;
    std::size_t cauchy = 0;
    for ( std::size_t j = 0; j < 16; ++j )
    {
      if ( col >= j && col - j < 16 )
        cauchy += ( a[j] && b[col - j] ) ? 1u : 0u;
    }
    EXPECT_EQ( column_ones, cauchy ) << col;
  }
}

TEST( csa_3_2, examples )
{
  auto const [s0, c0] = csa_3_2( u( 9, 4 ), u( 0, 4 ), u( 0, 4 ) );
  EXPECT_EQ( to_value( s0 ), 9 );
  EXPECT_TRUE( c0.is_zero() );

  auto const [s1, c1] = csa_3_2( u( 5, 4 ), u( 3, 4 ), u( 6, 4 ) );
  EXPECT_EQ( to_value( s1 ), 0 );
  EXPECT_EQ( to_binary_string( c1 ), "1110" );

  auto const [s2, c2] = csa_3_2( u( 1, 4 ), u( 1, 4 ), u( 1, 4 ) );
  EXPECT_EQ( to_value( s2 ), 1 );
  EXPECT_EQ( to_value( c2 ), 2 );

  EXPECT_THROW( csa_3_2( u( 8, 4 ), u( 8, 4 ), u( 0, 4 ) ), invalid_argument );
  EXPECT_THROW( csa_3_2( u( 0, 4 ), u( 0, 4 ), u( 0, 5 ) ), invalid_argument );
}

TEST( csa_3_2, exhaustive_4_bit_triples_preserve_sum )
{
  for ( std::uint64_t x = 0; x < 16; ++x )
    for ( std::uint64_t y = 0; y < 16; ++y )
      for ( std::uint64_t z = 0; z < 16; ++z )
      {
        auto const [s, c] = csa_3_2( u( x, 6 ), u( y, 6 ), u( z, 6 ) );
        ASSERT_EQ( to_value( s ) + to_value( c ), x + y + z );
      }
}

TEST( csa_stage, row_count_law )
{
  std::mt19937_64 rng( 1 );
  auto const r64 = csa_stage( random_rows( 64, 128, 64, rng ) );
  EXPECT_EQ( r64.second.rows_out, 43u );
  EXPECT_EQ( r64.second.left_out, 1u );
  EXPECT_EQ( r64.second.ticks, 1u );

  EXPECT_EQ( csa_stage( random_rows( 3, 16, 8, rng ) ).second.rows_out, 2u );

  auto const r29 = csa_stage( random_rows( 29, 64, 32, rng ) );
  EXPECT_EQ( r29.second.rows_out, 20u );
  EXPECT_EQ( r29.second.left_out, 2u );

  for ( std::size_t n = 3; n < 100; ++n )
  {
    auto const rs = random_rows( n, 32, 16, rng );
    auto const [out, rec] = csa_stage( rs );
    ASSERT_EQ( rec.rows_out, n - n / 3 );
    ASSERT_EQ( out.total(), rs.total() );
  }
  EXPECT_THROW( csa_stage( random_rows( 2, 8, 4, rng ) ), invalid_argument );
}

TEST( quantize_columns, examples )
{
  auto const [out, rec] = quantize_columns( rows_of( 3, { 3, 3, 1 } ), 3 );
  ASSERT_EQ( out.rows.size(), 2u );
  EXPECT_EQ( to_binary_string( out.rows[0] ), "001" );
  EXPECT_EQ( to_binary_string( out.rows[1] ), "110" );
  EXPECT_EQ( rec.ticks, 2u );

  auto const zeros = quantize_columns( rows_of( 8, { 0, 0, 0, 0, 0 } ), 7 );
  for ( auto const& r : zeros.first.rows )
    EXPECT_TRUE( r.is_zero() );

  std::mt19937_64 rng( 63 );
  auto const wide = random_rows( 64, 128, 64, rng );
  auto const [q, qrec] = quantize_columns( wide, 63, 1 );
  EXPECT_EQ( q.rows.size(), 7u );
  EXPECT_EQ( qrec.rows_out, 7u );
  EXPECT_EQ( qrec.left_out, 1u );
  EXPECT_EQ( q.total(), wide.total() );
  EXPECT_EQ( q.rows.back(), wide.rows.back() );
}

TEST( quantize_columns, single_column_of_ones_is_its_popcount )
{
  for ( std::size_t m = 1; m <= 40; ++m )
  {
    row_set rs{ 8, std::vector<bit_vector>( m, u( 1, 8 ) ) };
    auto const [out, rec] = quantize_columns( rs, std::max<std::size_t>( m, 3 ) );
    ASSERT_EQ( out.rows.size(), static_cast<std::size_t>( floor_log2( m ) ) + 1u );
    for ( std::size_t q = 0; q < out.rows.size(); ++q )
    {
      // plane q holds bit q of m, shifted to column q
      ASSERT_EQ( to_value( out.rows[q] ), ( ( m >> q ) & 1u ) << q ) << m;
    }
  }
}

TEST( quantize_columns, errors )
{
  EXPECT_THROW( quantize_columns( rows_of( 4, { 1, 1, 1, 1 } ), 3 ), invalid_argument );
  EXPECT_THROW( quantize_columns( rows_of( 4, { 1, 1 } ), 2 ), invalid_argument );
  EXPECT_THROW( quantize_columns( rows_of( 2, { 3, 3, 3 } ), 3 ), invalid_argument ); // count 3 needs a second column
}

TEST( schedules, published_trajectories )
{
  std::mt19937_64 rng( 4 );
  auto const rows = partial_products( random_bit_vector( 64, rng ), random_bit_vector( 64, rng ) );

  auto const [a_rows, a] = run_schedule_a( rows );
  EXPECT_EQ( a.row_trajectory, ( std::vector<std::size_t>{ 64, 43, 29, 20, 14, 10, 7, 5, 4, 3, 2 } ) );
  EXPECT_EQ( a.total_ticks, 10u );
  EXPECT_EQ( a_rows.total(), rows.total() );

  auto const [b_rows, b] = run_schedule_b( rows );
  EXPECT_EQ( b.row_trajectory, ( std::vector<std::size_t>{ 64, 7, 3, 2 } ) );
  EXPECT_EQ( b.total_ticks, 5u );
  EXPECT_EQ( b_rows.total(), rows.total() );
  ASSERT_EQ( b.stages.size(), 3u );
  EXPECT_EQ( b.stages[0].kind, stage_kind::quantizer );
  EXPECT_EQ( b.stages[0].capacity, 63u );
  EXPECT_EQ( b.stages[1].capacity, 7u );
  EXPECT_EQ( b.stages[2].kind, stage_kind::csa_3_2 );
}

TEST( schedules, simulated_trajectory_matches_row_count_plan )
{
  std::mt19937_64 rng( 8 );
  for ( std::size_t n = 2; n <= 80; ++n )
  {
    auto const rows = random_rows( n, 96, 64, rng );
    for ( auto s : { schedule::a, schedule::b } )
    {
      auto const [out, rep] = run_schedule( rows, s );
      auto const plan = plan_schedule( s, n );
      std::vector<std::size_t> expected( plan.trajectory.begin(), plan.trajectory.end() );
      ASSERT_EQ( rep.row_trajectory, expected ) << n;
      ASSERT_EQ( rep.total_ticks, plan.ticks );
      ASSERT_EQ( out.total(), rows.total() );
    }
  }
}

TEST( multiply, examples )
{
  auto const z = multiply( u( 200, 8 ), u( 0, 8 ), schedule::a );
  EXPECT_TRUE( z.product.is_zero() );

  std::mt19937_64 rng( 64 );
  auto const r = multiply( random_bit_vector( 64, rng ), random_bit_vector( 64, rng ), schedule::b );
  EXPECT_EQ( r.ticks, 8u );
  EXPECT_EQ( r.product.width(), 128u );

  EXPECT_THROW( multiply( u( 1, 2 ), u( 1, 2 ), schedule::a ), invalid_argument );
  EXPECT_THROW( multiply( bit_vector( 12 ), bit_vector( 12 ), schedule::a ), invalid_argument );
  EXPECT_THROW( multiply( bit_vector( 128 ), bit_vector( 128 ), schedule::b ), invalid_argument );
}

TEST( multiply, exhaustive_4_bit_and_small_8_bit )
{
  for ( auto s : { schedule::a, schedule::b } )
  {
    for ( std::uint64_t x = 0; x < 16; ++x )
      for ( std::uint64_t y = 0; y < 16; ++y )
        ASSERT_EQ( to_value( multiply( u( x, 4 ), u( y, 4 ), s ).product ), x * y );
    for ( std::uint64_t x = 0; x < 64; ++x )
      for ( std::uint64_t y = 0; y < 64; ++y )
        ASSERT_EQ( to_value( multiply( u( x, 8 ), u( y, 8 ), s ).product ), x * y );
  }
}

TEST( multiply, random_full_range )
{
  std::mt19937_64 rng( 10 );
  for ( std::size_t n : { 8u, 16u, 32u, 64u } )
  {
    for ( auto s : { schedule::a, schedule::b } )
    {
      for ( int t = 0; t < 2000; ++t )
      {
        auto const a = random_bit_vector( n, rng );
        auto const b = random_bit_vector( n, rng );
        ASSERT_EQ( to_value( multiply( a, b, s ).product ), oracle_mul( to_value( a ), to_value( b ) ) );
      }
    }
  }
}

TEST( multiply, all_ones_operands_stay_within_width )
{
  for ( std::size_t n : { 4u, 8u, 16u, 32u, 64u } )
  {
    auto ones = bit_vector( n );
    for ( std::size_t j = 0; j < n; ++j )
      ones.set( j, true );
    for ( auto s : { schedule::a, schedule::b } )
    {
      auto const v = to_value( ones );
      EXPECT_EQ( to_value( multiply( ones, ones, s ).product ), v * v );
    }
  }
}
