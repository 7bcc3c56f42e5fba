#ifndef ACNA_IO_HPP
#define ACNA_IO_HPP

#include "acna/ana.hpp"
#include "acna/game.hpp"
#include "acna/oracle.hpp"
#include "acna/swarm.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace acna {

/// Raised for malformed documents; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a game document (JSON): format_version, players, strategies,
/// optional labels, payoffs (one flat table per player, player 1's index
/// outermost).
GameTensor parse_game(const std::string& text);
GameTensor load_game_file(const std::string& path);
std::string serialize_game(const GameTensor& game);

/// Parses a candidate profile document: {"x": [..]}.
Vector parse_profile(const std::string& text, int expected_length);
Vector load_profile_file(const std::string& path, int expected_length);

std::string certificate_to_json(const GameTensor& game,
                                const EquilibriumCertificate& cert);

struct SolveReport {
  std::uint64_t seed = 0;
  SolveResult result;
};

std::string solve_report_to_json(const GameTensor& game,
                                 const SolveReport& report);

/// Trace table: time, x_1..x_m, Q, G, H, zeta, dxnorm. Floats printed with
/// %.17g; stride recorded in the header comment.
void write_trace_csv(std::ostream& out, const AnaTrace& trace, int stride);
void write_trace_file(const std::string& path, const AnaTrace& trace,
                      int stride);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace acna

#endif  // ACNA_IO_HPP
