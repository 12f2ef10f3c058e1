/*!
  \file errors.hpp
  \brief Exception types shared by every carrysim module
*/

#pragma once

#include <stdexcept>
#include <string>

namespace carrysim
{

/*! \brief A caller broke an operation's precondition (bad width, bad index, bad text). */
class invalid_argument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/*! \brief A simulated circuit violated one of its own structural invariants.
 *
 * These are unreachable for inputs that satisfy the preconditions; seeing one
 * means the circuit model itself is wrong.
 */
class model_integrity_error : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

namespace detail
{

inline void require( bool cond, std::string const& what )
{
  if ( !cond )
  {
    throw invalid_argument( what );
  }
}

inline void ensure( bool cond, std::string const& what )
{
  if ( !cond )
  {
    throw model_integrity_error( what );
  }
}

} // namespace detail

} // namespace carrysim
