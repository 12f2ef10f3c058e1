// carrysim: run the adders and multipliers, sweep them against the oracle,
// and print cost tables or consolidation schedules.
//
// Exit status: 0 when every check passes, 1 on a failed check, 2 on usage errors.

#include <carrysim/carrysim.hpp>

#include "CLI11.hpp"

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace
{

using namespace carrysim;

enum exit_code : int
{
  exit_pass = 0,
  exit_check_failed = 1,
  exit_usage = 2
};

struct run_config
{
  std::string design = "flash";
  std::optional<std::size_t> width;
  std::string sched = "B";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool trace = false;
  bool table = false;
  bool no_reuse = false;
  std::vector<std::string> operands;
};

std::map<std::string, circuit> const circuit_names{ { "cascade", circuit::cascade },
                                                    { "flash", circuit::flash },
                                                    { "flash_double", circuit::flash_double },
                                                    { "blocked_double", circuit::blocked_double },
                                                    { "mult", circuit::mult } };

bool json_out( run_config const& cfg ) { return cfg.format == "json"; }

schedule parse_schedule( std::string const& s ) { return ( s == "A" || s == "a" ) ? schedule::a : schedule::b; }

void emit( record const& r ) { std::cout << r.dump() << '\n'; }

std::string strip_operand_prefix( std::string s )
{
  if ( s.size() >= 2u && s[1] == '=' && ( s[0] == 'a' || s[0] == 'b' ) )
    return s.substr( 2 );
  return s;
}

std::pair<bit_vector, bit_vector> operands_of( run_config const& cfg, std::size_t width )
{
  detail::require( cfg.operands.size() == 2u, "expected exactly two hex operands" );
  return { from_hex( strip_operand_prefix( cfg.operands[0] ), width ), from_hex( strip_operand_prefix( cfg.operands[1] ), width ) };
}

int cmd_add( run_config const& cfg )
{
  auto const it = circuit_names.find( cfg.design );
  detail::require( it != circuit_names.end() && it->second != circuit::mult, "add supports cascade, flash, flash_double and blocked_double" );
  std::size_t const width = cfg.width.value_or( 8u );
  validate_width( it->second, width );
  auto const [a, b] = operands_of( cfg, width );

  bit_vector sum( 1 );
  bool carry = false;
  unsigned ticks = 0;
  std::optional<record> detail_record;

  switch ( it->second )
  {
  case circuit::cascade:
  {
    auto const r = cascade_add( a, b, { .retain_trace = cfg.trace, .check_invariants = true } );
    sum = r.sum;
    carry = r.carry;
    ticks = r.ticks;
    if ( cfg.trace )
      detail_record = to_record( r.trace );
    break;
  }
  case circuit::flash:
  {
    auto const r = flash_add( a, b );
    sum = r.sum;
    ticks = r.ticks;
    if ( cfg.trace )
      detail_record = to_record( r.fires );
    break;
  }
  case circuit::flash_double:
  {
    auto const r = double_width_add( a, b );
    sum = r.sum;
    ticks = r.ticks;
    break;
  }
  case circuit::blocked_double:
  {
    auto const r = blocked_add( a, b );
    sum = r.sum;
    ticks = r.ticks;
    if ( cfg.trace )
    {
      record firings = record::array();
      for ( auto const& f : r.second_stage_firings )
        firings.push_back( record::array( { f.i, f.j } ) );
      detail_record = record{ { "blocks", r.blocks },
                              { "first_stage_gates", r.first_stage_gates },
                              { "second_stage_gates", r.second_stage_gates },
                              { "second_stage_firings", firings } };
    }
    break;
  }
  case circuit::mult:
    break;
  }
  if ( it->second != circuit::cascade )
    carry = sum[width];

  if ( json_out( cfg ) )
  {
    record out{ { "command", "add" }, { "design", cfg.design }, { "width", width }, { "a", to_hex( a ) },
                { "b", to_hex( b ) }, { "sum", to_hex( sum ) },   { "carry", carry ? 1 : 0 }, { "ticks", ticks } };
    if ( detail_record )
      out["trace"] = *detail_record;
    emit( out );
  }
  else
  {
    std::cout << "sum " << to_hex( sum ) << " carry " << ( carry ? 1 : 0 ) << " ticks " << ticks << '\n';
    if ( detail_record )
      std::cout << detail_record->dump() << '\n';
  }
  return exit_pass;
}

int cmd_mul( run_config const& cfg )
{
  std::size_t const width = cfg.width.value_or( 8u );
  validate_width( circuit::mult, width );
  auto const [a, b] = operands_of( cfg, width );
  auto const r = multiply( a, b, parse_schedule( cfg.sched ) );

  if ( json_out( cfg ) )
  {
    emit( record{ { "command", "mul" },
                  { "width", width },
                  { "a", to_hex( a ) },
                  { "b", to_hex( b ) },
                  { "product", to_hex( r.product ) },
                  { "ticks", r.ticks },
                  { "report", to_record( r.report ) } } );
  }
  else
  {
    std::cout << "product " << to_hex( r.product ) << " ticks " << r.ticks << '\n';
    std::cout << "schedule " << to_string( r.report.kind ) << " trajectory";
    for ( auto n : r.report.row_trajectory )
      std::cout << ' ' << n;
    std::cout << '\n';
  }
  return exit_pass;
}

int cmd_verify( run_config const& cfg )
{
  auto const it = circuit_names.find( cfg.design );
  detail::require( it != circuit_names.end(), "unknown design '" + cfg.design + "'" );
  detail::require( cfg.trials >= 1u, "trials must be at least 1" );
  verify_config vc{ it->second, cfg.width.value_or( 8u ), parse_schedule( cfg.sched ), cfg.trials, cfg.seed };
  auto const summary = verify( vc );

  if ( json_out( cfg ) )
  {
    emit( to_record( summary ) );
  }
  else
  {
    std::cout << to_string( vc.kind ) << " width " << vc.width << ( summary.exhaustive ? " exhaustive" : " random" );
    if ( !summary.exhaustive )
      std::cout << " (" << sweep_generator << " seed " << vc.seed << ")";
    std::cout << ": " << summary.passed << '/' << summary.cases << ( summary.ok() ? " pass" : " FAIL" ) << '\n';
    if ( summary.first_failure )
    {
      auto const& c = *summary.first_failure;
      std::cout << "counterexample #" << c.index << " a=" << c.a_hex << " b=" << c.b_hex << " expected " << c.expected_hex
                << " got " << c.got_hex << " ticks " << c.ticks << '/' << c.expected_ticks;
      if ( !c.fault.empty() )
        std::cout << " fault: " << c.fault;
      std::cout << '\n';
    }
  }
  return summary.ok() ? exit_pass : exit_check_failed;
}

record cost_table()
{
  auto const a = mult_hardware_estimate( schedule::a );
  auto const b = mult_hardware_estimate( schedule::b );
  return record{ { "cascade_gates_128", cascade_gates( 7 ) },
                 { "double_width_gates_64", double_width_gates( 64 ) },
                 { "blocked_gates_64", blocked_gates( 64 ) },
                 { "three_to_two_circuits", a.three_to_two_circuits },
                 { "quantizer_entries", b.quantizer_entries },
                 { "comparison_entries", a.comparison_entries },
                 { "lower_bound_stages", consolidation_lower_bound( 64, 2 ) },
                 { "ticks_a", end_to_end_ticks( schedule::a ) },
                 { "ticks_b", end_to_end_ticks( schedule::b ) },
                 { "speedup", speedup() } };
}

int cmd_cost( run_config const& cfg )
{
  if ( cfg.table )
  {
    auto const t = cost_table();
    if ( json_out( cfg ) )
    {
      emit( t );
    }
    else
    {
      for ( auto const& [key, value] : t.items() )
        std::cout << key << ' ' << value.dump() << '\n';
    }
    return exit_pass;
  }

  std::map<std::string, std::pair<design, std::size_t>> const designs{
      { "cascade", { design::cascade, 128 } },
      { "flash", { design::flash, 64 } },
      { "flash_double", { design::flash_double, 128 } },
      { "blocked_double", { design::blocked_double, 128 } },
      { "mult", { parse_schedule( cfg.sched ) == schedule::a ? design::mult_schedule_a : design::mult_schedule_b, 64 } } };
  auto const it = designs.find( cfg.design );
  detail::require( it != designs.end(), "unknown design '" + cfg.design + "'" );
  auto const report = cost_of( it->second.first, cfg.width.value_or( it->second.second ), !cfg.no_reuse );

  if ( json_out( cfg ) )
  {
    emit( to_record( report ) );
    if ( cfg.design == "mult" )
      emit( to_record( mult_hardware_estimate( parse_schedule( cfg.sched ), report.width, !cfg.no_reuse ) ) );
  }
  else
  {
    for ( auto const& [key, value] : to_record( report ).items() )
      std::cout << key << ' ' << ( value.is_string() ? value.get<std::string>() : value.dump() ) << '\n';
  }
  return exit_pass;
}

int cmd_schedule( run_config const& cfg )
{
  std::size_t const width = cfg.width.value_or( 64u );
  validate_width( circuit::mult, width );
  auto const s = parse_schedule( cfg.sched );

  // the trajectory does not depend on the operand values
  auto ones = bit_vector( width );
  for ( std::size_t j = 0; j < width; ++j )
    ones.set( j, true );
  auto const [rows, report] = run_schedule( partial_products( ones, ones ), s );

  auto const quoted = width == cost::mult_width ? std::optional<std::uint64_t>( end_to_end_ticks( s ) ) : std::nullopt;
  std::uint64_t const simulated = report.total_ticks + cost::double_width_ticks;

  if ( json_out( cfg ) )
  {
    auto out = to_record( report );
    out["simulated_end_to_end_ticks"] = simulated;
    if ( quoted )
      out["quoted_end_to_end_ticks"] = *quoted;
    emit( out );
  }
  else
  {
    std::cout << "schedule " << to_string( s ) << " trajectory";
    for ( auto n : report.row_trajectory )
      std::cout << ' ' << n;
    std::cout << " total_ticks " << report.total_ticks << '\n';
    for ( auto const& st : report.stages )
    {
      std::cout << "  " << to_string( st.kind ) << ' ' << st.rows_in << " -> " << st.rows_out << " left_out " << st.left_out
                << " ticks " << st.ticks << '\n';
    }
    std::cout << "end_to_end simulated " << simulated;
    if ( quoted )
      std::cout << " quoted " << *quoted;
    std::cout << '\n';
  }
  return exit_pass;
}

void add_common( CLI::App* sub, run_config& cfg )
{
  sub->add_option( "--width,-w", cfg.width, "operand width in bits" )->check( CLI::PositiveNumber );
  sub->add_option( "--format,-f", cfg.format, "output format" )
      ->envname( "CARRYSIM_FORMAT" )
      ->check( CLI::IsMember( { "text", "json" } ) )
      ->capture_default_str();
}

void add_schedule( CLI::App* sub, run_config& cfg )
{
  sub->add_option( "--schedule,-s", cfg.sched, "multiplier consolidation schedule" )
      ->check( CLI::IsMember( { "A", "B", "a", "b" } ) )
      ->capture_default_str();
}

} // namespace

int main( int argc, char** argv )
{
  run_config cfg;
  CLI::App app{ "Simulate single-tick carry adders and quantizer multipliers" };
  app.require_subcommand( 1 );

  std::vector<std::string> const design_list{ "cascade", "flash", "flash_double", "blocked_double", "mult" };

  auto* add = app.add_subcommand( "add", "add two hex operands" );
  add->add_option( "--design,-d", cfg.design )->check( CLI::IsMember( design_list ) )->capture_default_str();
  add->add_flag( "--trace", cfg.trace, "print the level trace or fire set" );
  add->add_option( "operands", cfg.operands, "a and b in hex (optionally a=.. b=..)" )->expected( 2 )->required();
  add_common( add, cfg );

  auto* mul = app.add_subcommand( "mul", "multiply two hex operands" );
  mul->add_option( "operands", cfg.operands, "a and b in hex" )->expected( 2 )->required();
  add_schedule( mul, cfg );
  add_common( mul, cfg );

  auto* ver = app.add_subcommand( "verify", "sweep a design against the oracle" );
  ver->add_option( "--design,-d", cfg.design )->check( CLI::IsMember( design_list ) )->capture_default_str();
  ver->add_option( "--trials,-n", cfg.trials, "random pairs when the width is above the exhaustive limit" )
      ->check( CLI::PositiveNumber )
      ->capture_default_str();
  ver->add_option( "--seed", cfg.seed )->capture_default_str();
  add_schedule( ver, cfg );
  add_common( ver, cfg );

  auto* cost = app.add_subcommand( "cost", "gate, memory and tick costs" );
  cost->add_option( "--design,-d", cfg.design )->check( CLI::IsMember( design_list ) )->capture_default_str();
  cost->add_flag( "--table", cfg.table, "print the reference cost table" );
  cost->add_flag( "--no-reuse", cfg.no_reuse, "count separate narrow quantizers for schedule B" );
  add_schedule( cost, cfg );
  add_common( cost, cfg );

  auto* sched = app.add_subcommand( "schedule", "trace a consolidation schedule" );
  add_schedule( sched, cfg );
  add_common( sched, cfg );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::CallForAllHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e );
    return exit_usage;
  }

  try
  {
    if ( add->parsed() )
      return cmd_add( cfg );
    if ( mul->parsed() )
      return cmd_mul( cfg );
    if ( ver->parsed() )
      return cmd_verify( cfg );
    if ( cost->parsed() )
      return cmd_cost( cfg );
    return cmd_schedule( cfg );
  }
  catch ( carrysim::invalid_argument const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  catch ( carrysim::model_integrity_error const& e )
  {
    std::cerr << "model fault: " << e.what() << '\n';
    return exit_check_failed;
  }
}
