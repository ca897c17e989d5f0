#ifndef SPRAYOPT_SOLUTION_IO_HPP
#define SPRAYOPT_SOLUTION_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprayopt/pareto.hpp"

namespace sprayopt {

/// CSV parse failure; message lists the offending line numbers.
class CsvError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Writes `pfr,sod,lambda,cv,tgf,<labels...>,rank,crowding`, one row per
/// candidate, raw objective values, 9 significant digits, `inf` for
/// infinite crowding. Rank and crowding must be assigned on every
/// candidate.
void write_solution_csv(std::ostream& os, const SolutionSet& set);
std::string solution_csv_string(const SolutionSet& set);

/// Parses a document produced by write_solution_csv. Directions are not
/// stored in the CSV and must be supplied to rebuild canonical values.
SolutionSet read_solution_csv(std::istream& is, const std::vector<Direction>& directions);

/// A CSV table read column-wise for the `pareto` command: arbitrary header,
/// numeric cells looked up by column name, original lines preserved.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> raw_lines;  // one per row, as read

    std::size_t column(const std::string& name) const;  // throws if absent
};

CsvTable read_csv_table(std::istream& is);

double parse_csv_number(const std::string& cell, std::size_t line_number);

}  // namespace sprayopt

#endif  // SPRAYOPT_SOLUTION_IO_HPP
