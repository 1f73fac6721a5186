#pragma once

// CSV output: comma separated, '.' decimal point, 17 significant digits,
// LF line endings, mandatory header row.

#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "presliding/oscillator.hpp"
#include "presliding/reversal_analysis.hpp"

namespace presliding::csv {

/// Locale-independent %.17g rendering.
[[nodiscard]] std::string format_number(double value);

void write_row(std::ostream& out, std::initializer_list<double> values);
void write_header(std::ostream& out, std::initializer_list<std::string_view> names);

inline constexpr std::string_view kTrajectoryHeader = "t,x,v,F,E_k,E_f_cum";
inline constexpr std::string_view kReversalHeader = "i,t_i,x_i,F_i,E_p,E_d_halfcycle";
inline constexpr std::string_view kChainHeader = "n,F_n,x_n,E_p,E_d";

void write_trajectory(std::ostream& out, const Trajectory& traj);
void write_reversals(std::ostream& out, std::span<const ReversalRecord> reversals);
void write_chain(std::ostream& out, std::span<const analysis::ReversalChainEntry> chain);

}  // namespace presliding::csv
