/*!
  \file report.hpp
  \brief Structured records for traces, fire sets, costs, schedules and sweeps

  Every record is an insertion-ordered JSON object, so dumping one gives a
  stable line with fixed field order.
*/

#pragma once

#include "bitcore.hpp"
#include "cascade_adder.hpp"
#include "cost_model.hpp"
#include "csa_multiplier.hpp"
#include "flash_adder.hpp"
#include "verify.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace carrysim
{

using record = nlohmann::ordered_json;

inline record to_record( cascade_state const& s )
{
  std::vector<int> carries( s.carries.begin(), s.carries.end() );
  return record{ { "level", s.level }, { "sums", to_hex( s.sums ) }, { "carries", carries } };
}

inline record to_record( cascade_trace const& t )
{
  record levels = record::array();
  for ( auto const& s : t.states )
  {
    levels.push_back( to_record( s ) );
  }
  return record{ { "levels", levels }, { "ticks", t.ticks } };
}

inline record to_record( fire_set const& f )
{
  record pairs = record::array();
  for ( auto const& x : f.firings )
  {
    pairs.push_back( record::array( { x.i, x.j } ) );
  }
  return record{ { "firings", pairs }, { "gates_evaluated", f.gates_evaluated } };
}

inline record to_record( cost_report const& c )
{
  return record{ { "design", std::string( to_string( c.kind ) ) },
                 { "width", c.width },
                 { "special_and_gates", c.special_and_gates },
                 { "special_circuits", c.special_circuits },
                 { "memory_entries", c.memory_entries },
                 { "ticks", c.ticks } };
}

inline record to_record( mult_estimate const& e )
{
  return record{ { "schedule", std::string( to_string( e.kind ) ) },
                 { "quantizer_reuse", e.quantizer_reuse },
                 { "three_to_two_circuits", e.three_to_two_circuits },
                 { "three_to_two_entries", e.three_to_two_entries },
                 { "wide_quantizers", e.wide_quantizers },
                 { "narrow_quantizers", e.narrow_quantizers },
                 { "quantizer_entries", e.quantizer_entries },
                 { "narrow_quantizer_entries", e.narrow_quantizer_entries },
                 { "comparison_circuits", e.comparison_circuits },
                 { "comparison_entries", e.comparison_entries } };
}

inline record to_record( stage_record const& s )
{
  return record{ { "kind", std::string( to_string( s.kind ) ) },
                 { "rows_in", s.rows_in },
                 { "rows_out", s.rows_out },
                 { "left_out", s.left_out },
                 { "ticks", s.ticks },
                 { "circuits_used", s.circuits_used },
                 { "capacity", s.capacity } };
}

inline record to_record( schedule_report const& r )
{
  record stages = record::array();
  for ( auto const& s : r.stages )
  {
    stages.push_back( to_record( s ) );
  }
  return record{ { "schedule", std::string( to_string( r.kind ) ) },
                 { "stages", stages },
                 { "trajectory", r.row_trajectory },
                 { "total_ticks", r.total_ticks } };
}

inline record to_record( verify_summary const& v )
{
  record out{ { "design", std::string( to_string( v.config.kind ) ) },
              { "width", v.config.width },
              { "mode", v.exhaustive ? "exhaustive" : "random" },
              { "generator", std::string( sweep_generator ) },
              { "seed", v.config.seed },
              { "cases", v.cases },
              { "passed", v.passed },
              { "failed", v.failed } };
  if ( v.config.kind == circuit::mult )
  {
    out["schedule"] = std::string( to_string( v.config.sched ) );
  }
  if ( v.first_failure )
  {
    auto const& c = *v.first_failure;
    out["counterexample"] = record{ { "index", c.index },         { "a", c.a_hex },         { "b", c.b_hex },
                                    { "expected", c.expected_hex }, { "got", c.got_hex },     { "ticks", c.ticks },
                                    { "expected_ticks", c.expected_ticks }, { "fault", c.fault } };
  }
  return out;
}

} // namespace carrysim
