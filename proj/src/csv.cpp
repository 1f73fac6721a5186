#include "presliding/csv.hpp"

#include <array>
#include <charconv>

namespace presliding::csv {

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, 17);
    return {buf.data(), res.ptr};
}

void write_header(std::ostream& out, std::initializer_list<std::string_view> names) {
    bool first = true;
    for (auto name : names) {
        if (!first) {
            out << ',';
        }
        out << name;
        first = false;
    }
    out << '\n';
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) {
            out << ',';
        }
        out << format_number(v);
        first = false;
    }
    out << '\n';
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
    out << kTrajectoryHeader << '\n';
    for (const auto& s : traj.samples) {
        write_row(out, {s.t, s.x, s.v, s.f, kinetic_energy(s, traj.config.params), s.e_f_cum});
    }
}

void write_reversals(std::ostream& out, std::span<const ReversalRecord> reversals) {
    out << kReversalHeader << '\n';
    for (const auto& r : reversals) {
        out << r.index << ',';
        write_row(out, {r.t_i, r.x_i, r.f_i, r.e_p, r.e_d_halfcycle});
    }
}

void write_chain(std::ostream& out, std::span<const analysis::ReversalChainEntry> chain) {
    out << kChainHeader << '\n';
    for (const auto& e : chain) {
        out << e.n << ',';
        write_row(out, {e.f_n, e.x_n, e.e_p, e.e_d});
    }
}

}  // namespace presliding::csv
