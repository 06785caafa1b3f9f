#pragma once

#include "ncperm/abp.hpp"
#include "ncperm/circuit.hpp"
#include "ncperm/gentry.hpp"
#include "ncperm/graph.hpp"
#include "ncperm/nc_poly.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncperm {

using Json = nlohmann::ordered_json;

/// Input error naming the source, the line (0 when not line-based) and what
/// was expected.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& expectation);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

std::string read_file(const std::string& path);

/// [{word: [names], coeff: "num/den"}], sorted by word names.
Json poly_to_json(const NcPoly& p);
NcPoly poly_from_json(const Json& j, const std::string& source = "<json>");

/// {layers: [[ids]], edges: [{from, to, coeff, var|null}], source, sink}
Json abp_to_json(const Abp& abp);
Abp abp_from_json(const Json& j, const std::string& source = "<json>");

/// {gates: [{id, kind, var|value|left,right}], output}; var gates may
/// carry an optional coeff.
Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j, const std::string& source = "<json>");

/// First line "n", then "i j NAME" or "i j = num/den". Blank lines and lines
/// starting with '#' are skipped.
LabeledDigraph parse_graph(std::string_view text, const std::string& source = "<graph>");
std::string format_graph(const LabeledDigraph& g);

/// One line of n integers: the image of 1..n.
Involution parse_involution(std::string_view text, const std::string& source = "<involution>");

/// DIMACS CNF: comment lines 'c', header "p cnf m k", clauses ending in 0.
Cnf parse_dimacs(std::string_view text, const std::string& source = "<cnf>");
std::string format_dimacs(const Cnf& cnf);

/// Word written as space- or comma-separated variable names.
Word parse_word(std::string_view text);

}  // namespace ncperm
