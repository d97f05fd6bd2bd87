#include "qanneal/pulse_io.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace qanneal {

namespace {

constexpr const char* kMagic = "qpulse 1";

// Whitespace-separated fields; anything after '#' is a comment.
std::vector<std::string> split_fields(const std::string& line) {
  std::istringstream in(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

int parse_site(const std::string& tok, int line_no) {
  if (tok == "1" || tok == "2" || tok == "3") return tok[0] - '0';
  fail(line_no, "bad site '" + tok + "'");
}

Transition parse_transition(const std::string& tok, int line_no) {
  if (tok == "12") return Transition::T12;
  if (tok == "23") return Transition::T23;
  fail(line_no, "bad transition '" + tok + "'");
}

SpinAxis parse_axis_field(const std::string& tok, int line_no) {
  try {
    return parse_axis(tok);
  } catch (const std::invalid_argument&) {
    fail(line_no, "bad axis '" + tok + "'");
  }
}

FreeEvolutionModel parse_model(const std::string& tok) {
  if (tok == "ddi") return FreeEvolutionModel::DdiOnly;
  if (tok == "full") return FreeEvolutionModel::Full;
  throw ParseError("bad free-evolution model '" + tok + "'");
}

double number_at(const std::vector<std::string>& f, std::size_t i, int line_no) {
  try {
    return parse_double(f.at(i));
  } catch (const std::exception& e) {
    fail(line_no, e.what());
  }
}

PulsePrimitive parse_line(const std::vector<std::string>& f, int line_no) {
  const std::string& kind = f[0];
  if (kind == "sel") {
    if (f.size() != 5) fail(line_no, "sel expects 4 fields");
    return SelectiveRotation{SiteIndex(parse_site(f[1], line_no)), parse_transition(f[2], line_no),
                             parse_axis_field(f[3], line_no), number_at(f, 4, line_no)};
  }
  if (kind == "nsel") {
    if (f.size() != 5 || f[2] != "-") fail(line_no, "nsel expects <site> - <axis> <angle>");
    return NonSelectiveRotation{SiteIndex(parse_site(f[1], line_no)), parse_axis_field(f[3], line_no),
                                number_at(f, 4, line_no)};
  }
  if (kind == "free") {
    if (f.size() != 6 || f[1] != "-" || f[2] != "-" || f[3] != "-") {
      fail(line_no, "free expects - - - <duration> <model>");
    }
    try {
      return FreeEvolution{number_at(f, 4, line_no), parse_model(f[5])};
    } catch (const ParseError& e) {
      fail(line_no, e.what());
    }
  }
  if (kind == "phase") {
    if (f.size() != 5 || f[1] != "-" || f[2] != "-" || f[3] != "-") fail(line_no, "phase expects - - - <angle>");
    return GlobalPhase{number_at(f, 4, line_no)};
  }
  fail(line_no, "unknown primitive '" + kind + "'");
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) throw ParseError("bad number '" + text + "'");
  if (!std::isfinite(value)) throw ParseError("non-finite number '" + text + "'");
  return value;
}

void write_text(std::ostream& out, const PulseProgram& prog) {
  out << kMagic << '\n';
  out << "label " << prog.label << '\n';
  for (const auto& step : prog.steps) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, SelectiveRotation>) {
            out << "sel " << p.site.value() << ' ' << to_string(p.transition) << ' ' << to_string(p.axis) << ' '
                << format_double(p.angle);
          } else if constexpr (std::is_same_v<T, NonSelectiveRotation>) {
            out << "nsel " << p.site.value() << " - " << to_string(p.axis) << ' ' << format_double(p.angle);
          } else if constexpr (std::is_same_v<T, FreeEvolution>) {
            out << "free - - - " << format_double(p.duration) << ' ' << to_string(p.model);
          } else {
            out << "phase - - - " << format_double(p.angle);
          }
        },
        step);
    out << '\n';
  }
}

std::string to_text(const PulseProgram& prog) {
  std::ostringstream out;
  write_text(out, prog);
  return out.str();
}

PulseProgram read_text(std::istream& in) {
  PulseProgram prog;
  std::string line;
  int line_no = 0;
  bool seen_magic = false;
  bool seen_label = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!seen_magic) {
      if (line != kMagic) fail(line_no, "expected header '" + std::string(kMagic) + "'");
      seen_magic = true;
      continue;
    }
    // The optional label line must come before any primitive.
    if (!seen_label && prog.steps.empty() && (line == "label" || line.rfind("label ", 0) == 0)) {
      prog.label = line.size() > 6 ? line.substr(6) : std::string{};
      seen_label = true;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    prog.steps.push_back(parse_line(fields, line_no));
  }
  if (!seen_magic) throw ParseError("empty pulse program");
  return prog;
}

PulseProgram parse_text(const std::string& text) {
  std::istringstream in(text);
  return read_text(in);
}

nlohmann::json to_json(const PulsePrimitive& step) {
  return std::visit(
      [](const auto& p) -> nlohmann::json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SelectiveRotation>) {
          return {{"kind", "sel"},
                  {"site", p.site.value()},
                  {"transition", to_string(p.transition)},
                  {"axis", to_string(p.axis)},
                  {"angle", p.angle}};
        } else if constexpr (std::is_same_v<T, NonSelectiveRotation>) {
          return {{"kind", "nsel"}, {"site", p.site.value()}, {"axis", to_string(p.axis)}, {"angle", p.angle}};
        } else if constexpr (std::is_same_v<T, FreeEvolution>) {
          return {{"kind", "free"}, {"duration", p.duration}, {"model", to_string(p.model)}};
        } else {
          return {{"kind", "phase"}, {"angle", p.angle}};
        }
      },
      step);
}

nlohmann::json to_json(const PulseProgram& prog) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : prog.steps) steps.push_back(to_json(step));
  return {{"format", "qpulse"}, {"version", 1}, {"label", prog.label}, {"steps", std::move(steps)}};
}

PulseProgram program_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object() || doc.value("format", std::string{}) != "qpulse" || doc.value("version", 0) != 1) {
      throw ParseError("not a qpulse version 1 document");
    }
    PulseProgram prog;
    prog.label = doc.value("label", std::string{});
    for (const auto& s : doc.at("steps")) {
      const std::string kind = s.at("kind").get<std::string>();
      if (kind == "sel") {
        const std::string tr = s.at("transition").get<std::string>();
        if (tr != "12" && tr != "23") throw ParseError("bad transition '" + tr + "'");
        prog.append(SelectiveRotation{SiteIndex(s.at("site").get<int>()),
                                      tr == "12" ? Transition::T12 : Transition::T23,
                                      parse_axis(s.at("axis").get<std::string>()), s.at("angle").get<double>()});
      } else if (kind == "nsel") {
        prog.append(NonSelectiveRotation{SiteIndex(s.at("site").get<int>()),
                                         parse_axis(s.at("axis").get<std::string>()), s.at("angle").get<double>()});
      } else if (kind == "free") {
        prog.append(FreeEvolution{s.at("duration").get<double>(), parse_model(s.at("model").get<std::string>())});
      } else if (kind == "phase") {
        prog.append(GlobalPhase{s.at("angle").get<double>()});
      } else {
        throw ParseError("unknown primitive kind '" + kind + "'");
      }
    }
    return prog;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed pulse program JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace qanneal
