/*!
  \file bitcore.hpp
  \brief Width-explicit bit vectors and the big-integer reference arithmetic

  Bits are stored least significant first: `v[j]` carries weight 2^j.
  Text renderings (hex and binary) are most significant first.
*/

#pragma once

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace carrysim
{

/*! \brief Arbitrary-precision nonnegative integer used as ground truth. */
using wide_value = boost::multiprecision::cpp_int;

class bit_vector
{
public:
  bit_vector() = default;

  /*! \brief All-zero vector of `width` bits. */
  explicit bit_vector( std::size_t width ) : bits_( width, 0u )
  {
    detail::require( width >= 1u, "bit_vector width must be positive" );
  }

  static bit_vector from_u64( std::uint64_t value, std::size_t width )
  {
    detail::require( width >= 64u || ( value >> width ) == 0u, "value does not fit in width " + std::to_string( width ) );
    bit_vector v( width );
    for ( std::size_t j = 0; j < std::min<std::size_t>( width, 64u ); ++j )
    {
      v.bits_[j] = static_cast<std::uint8_t>( ( value >> j ) & 1u );
    }
    return v;
  }

  static bit_vector from_value( wide_value const& value, std::size_t width )
  {
    detail::require( value >= 0, "negative value" );
    detail::require( value == 0 || boost::multiprecision::msb( value ) < width, "value does not fit in width " + std::to_string( width ) );
    bit_vector v( width );
    for ( std::size_t j = 0; j < width; ++j )
    {
      v.bits_[j] = boost::multiprecision::bit_test( value, static_cast<unsigned>( j ) ) ? 1u : 0u;
    }
    return v;
  }

  std::size_t width() const noexcept { return bits_.size(); }

  bool operator[]( std::size_t j ) const { return bits_[j] != 0u; }

  void set( std::size_t j, bool bit ) { bits_[j] = bit ? 1u : 0u; }
  void flip( std::size_t j ) { bits_[j] ^= 1u; }

  std::span<std::uint8_t const> bits() const noexcept { return bits_; }

  /*! \brief Bits [lo, lo + len) as a new vector. */
  bit_vector slice( std::size_t lo, std::size_t len ) const
  {
    detail::require( len >= 1u && lo + len <= width(), "slice out of range" );
    bit_vector out( len );
    std::copy_n( bits_.begin() + static_cast<std::ptrdiff_t>( lo ), len, out.bits_.begin() );
    return out;
  }

  /*! \brief `high` placed above `low`: result[j] = low[j], result[low.width() + j] = high[j]. */
  static bit_vector concat( bit_vector const& low, bit_vector const& high )
  {
    bit_vector out( low.width() + high.width() );
    std::copy( low.bits_.begin(), low.bits_.end(), out.bits_.begin() );
    std::copy( high.bits_.begin(), high.bits_.end(), out.bits_.begin() + static_cast<std::ptrdiff_t>( low.width() ) );
    return out;
  }

  /*! \brief Same value in `new_width` bits; dropped high bits must be zero. */
  bit_vector resized( std::size_t new_width ) const
  {
    for ( std::size_t j = new_width; j < width(); ++j )
    {
      detail::require( bits_[j] == 0u, "resize would drop a set bit" );
    }
    bit_vector out( new_width );
    std::copy_n( bits_.begin(), std::min( new_width, width() ), out.bits_.begin() );
    return out;
  }

  std::size_t popcount() const noexcept
  {
    return static_cast<std::size_t>( std::count( bits_.begin(), bits_.end(), std::uint8_t{ 1 } ) );
  }

  bool is_zero() const noexcept { return popcount() == 0u; }

  bool all_ones() const noexcept { return popcount() == width(); }

  friend bool operator==( bit_vector const&, bit_vector const& ) = default;

private:
  std::vector<std::uint8_t> bits_;
};

inline wide_value to_value( bit_vector const& v )
{
  wide_value out = 0;
  for ( std::size_t j = v.width(); j-- > 0; )
  {
    out <<= 1;
    if ( v[j] )
    {
      out |= 1;
    }
  }
  return out;
}

/*! \brief Parses lowercase or uppercase hex without prefix into `width` bits. */
inline bit_vector from_hex( std::string_view text, std::size_t width )
{
  detail::require( width >= 1u, "width must be positive" );
  detail::require( !text.empty(), "empty hex string" );
  bit_vector out( width );
  std::size_t pos = 0;
  for ( auto it = text.rbegin(); it != text.rend(); ++it, pos += 4 )
  {
    char const ch = *it;
    unsigned digit = 0;
    if ( ch >= '0' && ch <= '9' )
      digit = static_cast<unsigned>( ch - '0' );
    else if ( ch >= 'a' && ch <= 'f' )
      digit = static_cast<unsigned>( ch - 'a' + 10 );
    else if ( ch >= 'A' && ch <= 'F' )
      digit = static_cast<unsigned>( ch - 'A' + 10 );
    else
      throw invalid_argument( "malformed hex digit '" + std::string( 1, ch ) + "' in \"" + std::string( text ) + "\"" );

    for ( unsigned q = 0; q < 4u; ++q )
    {
      if ( ( ( digit >> q ) & 1u ) == 0u )
        continue;
      detail::require( pos + q < width, "hex value \"" + std::string( text ) + "\" out of range for width " + std::to_string( width ) );
      out.set( pos + q, true );
    }
  }
  return out;
}

/*! \brief Minimal lowercase hex, "0" for zero. */
inline std::string to_hex( bit_vector const& v )
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for ( std::size_t lo = 0; lo < v.width(); lo += 4 )
  {
    unsigned nibble = 0;
    for ( std::size_t q = 0; q < 4u && lo + q < v.width(); ++q )
    {
      nibble |= static_cast<unsigned>( v[lo + q] ) << q;
    }
    out.push_back( digits[nibble] );
  }
  while ( out.size() > 1u && out.back() == '0' )
  {
    out.pop_back();
  }
  std::reverse( out.begin(), out.end() );
  return out;
}

/*! \brief Exactly `width` characters, most significant bit first. */
inline std::string to_binary_string( bit_vector const& v )
{
  std::string out( v.width(), '0' );
  for ( std::size_t j = 0; j < v.width(); ++j )
  {
    out[v.width() - 1u - j] = v[j] ? '1' : '0';
  }
  return out;
}

/*! \brief Parses an MSB-first binary string; the width is the string length. */
inline bit_vector from_binary_string( std::string_view text )
{
  detail::require( !text.empty(), "empty binary string" );
  bit_vector out( text.size() );
  for ( std::size_t j = 0; j < text.size(); ++j )
  {
    char const ch = text[text.size() - 1u - j];
    detail::require( ch == '0' || ch == '1', "malformed binary string" );
    out.set( j, ch == '1' );
  }
  return out;
}

inline wide_value oracle_add( wide_value const& a, wide_value const& b ) { return a + b; }

inline wide_value oracle_mul( wide_value const& a, wide_value const& b ) { return a * b; }

/*! \brief Uniform random vector; draws ceil(width / 64) words from `rng`, low word first. */
inline bit_vector random_bit_vector( std::size_t width, std::mt19937_64& rng )
{
  bit_vector out( width );
  for ( std::size_t lo = 0; lo < width; lo += 64u )
  {
    std::uint64_t const word = rng();
    for ( std::size_t q = 0; q < 64u && lo + q < width; ++q )
    {
      out.set( lo + q, ( ( word >> q ) & 1u ) != 0u );
    }
  }
  return out;
}

inline bool is_power_of_two( std::size_t n ) noexcept { return n != 0u && ( n & ( n - 1u ) ) == 0u; }

inline unsigned log2_exact( std::size_t n )
{
  detail::require( is_power_of_two( n ), std::to_string( n ) + " is not a power of two" );
  unsigned k = 0;
  while ( ( std::size_t{ 1 } << k ) < n )
  {
    ++k;
  }
  return k;
}

} // namespace carrysim
