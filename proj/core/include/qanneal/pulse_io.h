#pragma once

// Text and JSON serialization of pulse programs.
//
// Text format, one primitive per line after a two-line header:
//
//   qpulse 1
//   label <free text>
//   sel   <site> <12|23> <x|y|z> <angle>
//   nsel  <site> -       <x|y|z> <angle>
//   free  -      -       -       <duration> <ddi|full>
//   phase -      -       -       <angle>
//
// Numbers are written with 17 significant digits, so parse(print(p)) == p
// and print(parse(text)) == text for any printed program. Lines starting
// with '#' and blank lines are ignored by the parser.

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qanneal/pulses.h"

namespace qanneal {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double value);
double parse_double(const std::string& text);

void write_text(std::ostream& out, const PulseProgram& prog);
std::string to_text(const PulseProgram& prog);
PulseProgram read_text(std::istream& in);
PulseProgram parse_text(const std::string& text);

nlohmann::json to_json(const PulsePrimitive& p);
nlohmann::json to_json(const PulseProgram& prog);
PulseProgram program_from_json(const nlohmann::json& doc);

}  // namespace qanneal
