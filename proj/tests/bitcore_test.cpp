#include <carrysim/bitcore.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace carrysim;

namespace
{

unsigned __int128 u128_of( bit_vector const& v )
{
  unsigned __int128 out = 0;
  for ( std::size_t j = v.width(); j-- > 0; )
  {
    out = ( out << 1 ) | static_cast<unsigned __int128>( v[j] );
  }
  return out;
}

wide_value wide_of( unsigned __int128 x )
{
  wide_value hi = static_cast<std::uint64_t>( x >> 64 );
  return ( hi << 64 ) + static_cast<std::uint64_t>( x );
}

} // namespace

TEST( bitcore, from_hex_examples )
{
  EXPECT_EQ( to_binary_string( from_hex( "0", 4 ) ), "0000" );

  auto const b = from_hex( "b", 4 );
  EXPECT_TRUE( b[0] );
  EXPECT_TRUE( b[1] );
  EXPECT_FALSE( b[2] );
  EXPECT_TRUE( b[3] );
  EXPECT_EQ( to_value( b ), 11 );

  auto const ones = from_hex( "ffffffffffffffff", 64 );
  EXPECT_TRUE( ones.all_ones() );
  EXPECT_EQ( ones.width(), 64u );
}

TEST( bitcore, to_value_examples )
{
  EXPECT_EQ( to_value( bit_vector( 4 ) ), 0 );
  EXPECT_EQ( to_value( from_binary_string( "1011" ) ), 11 );
  wide_value const max64 = ( wide_value( 1 ) << 64 ) - 1;
  EXPECT_EQ( to_value( from_hex( "ffffffffffffffff", 64 ) ), max64 );
}

TEST( bitcore, from_hex_errors )
{
  EXPECT_THROW( from_hex( "xyz", 8 ), invalid_argument );
  EXPECT_THROW( from_hex( "", 8 ), invalid_argument );
  EXPECT_THROW( from_hex( "10", 4 ), invalid_argument );
  EXPECT_THROW( from_hex( "1ff", 8 ), invalid_argument );
  EXPECT_THROW( from_hex( "1", 0 ), invalid_argument );
  // leading zeros beyond the width are fine
  EXPECT_EQ( to_value( from_hex( "000f", 4 ) ), 15 );
}

TEST( bitcore, oracle_examples )
{
  EXPECT_EQ( oracle_add( 0, 12345 ), 12345 );
  EXPECT_EQ( oracle_add( 11, 6 ), 17 );
  wide_value const m = ( wide_value( 1 ) << 64 ) - 1;
  wide_value const expected = ( wide_value( 1 ) << 128 ) - ( wide_value( 1 ) << 65 ) + 1;
  EXPECT_EQ( oracle_mul( m, m ), expected );
}

TEST( bitcore, hex_round_trip_property )
{
  std::mt19937_64 rng( 7 );
  for ( int t = 0; t < 2000; ++t )
  {
    std::size_t const width = 1u + rng() % 200u;
    auto const v = random_bit_vector( width, rng );
    EXPECT_EQ( from_hex( to_hex( v ), width ), v );
    EXPECT_EQ( bit_vector::from_value( to_value( v ), width ), v );
    EXPECT_EQ( from_binary_string( to_binary_string( v ) ), v );
  }
}

TEST( bitcore, oracle_wrapper_matches_native_128 )
{
  std::mt19937_64 rng( 11 );
  for ( int t = 0; t < 100000; ++t )
  {
    auto const a = random_bit_vector( 64, rng );
    auto const b = random_bit_vector( 64, rng );
    auto const na = u128_of( a );
    auto const nb = u128_of( b );
    ASSERT_EQ( oracle_add( to_value( a ), to_value( b ) ), wide_of( na + nb ) );
    ASSERT_EQ( oracle_mul( to_value( a ), to_value( b ) ), wide_of( na * nb ) );
  }
}

TEST( bitcore, value_conversions_reject_overflow )
{
  EXPECT_THROW( bit_vector::from_u64( 16, 4 ), invalid_argument );
  EXPECT_THROW( bit_vector::from_value( wide_value( 1 ) << 8, 8 ), invalid_argument );
  EXPECT_EQ( to_value( bit_vector::from_value( ( wide_value( 1 ) << 8 ) - 1, 8 ) ), 255 );
  EXPECT_THROW( from_hex( "1", 4 ).resized( 0 ), invalid_argument );
  EXPECT_THROW( from_hex( "8", 4 ).resized( 3 ), invalid_argument );
}

TEST( bitcore, slice_and_concat )
{
  auto const v = from_hex( "a5", 8 );
  EXPECT_EQ( to_hex( v.slice( 0, 4 ) ), "5" );
  EXPECT_EQ( to_hex( v.slice( 4, 4 ) ), "a" );
  EXPECT_EQ( bit_vector::concat( v.slice( 0, 4 ), v.slice( 4, 4 ) ), v );
  EXPECT_THROW( v.slice( 6, 4 ), invalid_argument );
}

TEST( bitcore, log2_exact )
{
  EXPECT_EQ( log2_exact( 1 ), 0u );
  EXPECT_EQ( log2_exact( 128 ), 7u );
  EXPECT_THROW( log2_exact( 12 ), invalid_argument );
}
