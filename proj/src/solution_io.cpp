#include "sprayopt/solution_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sprayopt {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

void write_solution_csv(std::ostream& os, const SolutionSet& set) {
    os << "pfr,sod,lambda,cv,tgf";
    for (const auto& label : set.labels) os << ',' << label;
    os << ",rank,crowding\n";
    for (const auto& c : set.candidates) {
        if (!c.rank || !c.crowding)
            throw std::invalid_argument(
                "write_solution_csv: rank and crowding must be assigned on every candidate");
        const Vec5 x = c.decision.as_array();
        for (std::size_t i = 0; i < kNumParams; ++i) os << (i ? "," : "") << fmt9(x[i]);
        for (double v : c.objectives.raw_values) os << ',' << fmt9(v);
        os << ',' << *c.rank << ',';
        if (std::isinf(*c.crowding))
            os << "inf";
        else
            os << fmt9(*c.crowding);
        os << '\n';
    }
}

std::string solution_csv_string(const SolutionSet& set) {
    std::ostringstream ss;
    write_solution_csv(ss, set);
    return ss.str();
}

double parse_csv_number(const std::string& cell, std::size_t line_number) {
    if (cell == "inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw CsvError("malformed numeric cell '" + cell + "' on line " +
                       std::to_string(line_number));
    }
    if (pos != cell.size())
        throw CsvError("malformed numeric cell '" + cell + "' on line " +
                       std::to_string(line_number));
    return v;
}

SolutionSet read_solution_csv(std::istream& is, const std::vector<Direction>& directions) {
    std::string line;
    if (!std::getline(is, line)) throw CsvError("empty document");
    const auto header = split_csv_line(line);
    const std::size_t k = directions.size();
    if (header.size() != kNumParams + k + 2)
        throw CsvError("header has " + std::to_string(header.size()) + " columns, expected " +
                       std::to_string(kNumParams + k + 2));
    for (std::size_t i = 0; i < kNumParams; ++i)
        if (header[i] != parameter_names()[i])
            throw CsvError("unexpected header column '" + header[i] + "'");
    if (header[header.size() - 2] != "rank" || header.back() != "crowding")
        throw CsvError("header must end with rank,crowding");

    SolutionSet set;
    set.labels.assign(header.begin() + kNumParams, header.end() - 2);
    set.directions = directions;

    std::size_t line_number = 1;
    std::vector<std::string> bad_lines;
    while (std::getline(is, line)) {
        ++line_number;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            bad_lines.push_back(std::to_string(line_number));
            continue;
        }
        try {
            Candidate c;
            Vec5 x;
            for (std::size_t i = 0; i < kNumParams; ++i)
                x[i] = parse_csv_number(cells[i], line_number);
            c.decision = ParameterVector::from_array(x);
            std::vector<double> raw(k), canonical(k);
            for (std::size_t l = 0; l < k; ++l) {
                raw[l] = parse_csv_number(cells[kNumParams + l], line_number);
                canonical[l] = canonicalize(raw[l], directions[l]);
            }
            c.objectives = ObjectiveVector(std::move(canonical), std::move(raw));
            c.rank = static_cast<int>(parse_csv_number(cells[header.size() - 2], line_number));
            c.crowding = parse_csv_number(cells.back(), line_number);
            set.candidates.push_back(std::move(c));
        } catch (const CsvError&) {
            bad_lines.push_back(std::to_string(line_number));
        }
    }
    if (!bad_lines.empty()) {
        std::string msg = "malformed rows on line(s): ";
        for (std::size_t i = 0; i < bad_lines.size(); ++i) msg += (i ? ", " : "") + bad_lines[i];
        throw CsvError(msg);
    }
    return set;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw CsvError("no column named '" + name + "'");
}

CsvTable read_csv_table(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw CsvError("empty document");
    table.header = split_csv_line(line);
    std::size_t line_number = 1;
    std::vector<std::string> bad_lines;
    while (std::getline(is, line)) {
        ++line_number;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != table.header.size()) {
            bad_lines.push_back(std::to_string(line_number));
            continue;
        }
        table.rows.push_back(std::move(cells));
        table.raw_lines.push_back(line);
    }
    if (!bad_lines.empty()) {
        std::string msg = "malformed rows on line(s): ";
        for (std::size_t i = 0; i < bad_lines.size(); ++i) msg += (i ? ", " : "") + bad_lines[i];
        throw CsvError(msg);
    }
    return table;
}

}  // namespace sprayopt
