#include <charconv>
#include <sstream>

#include "ffk/harness.hpp"
#include "json.hpp"

namespace ffk {
namespace {

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string joined_params(const Params& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + '=' + v;
  }
  return s;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "pretty") return Format::pretty;
  throw ParseError("unknown format '" + name + "' (json, csv, pretty)");
}

const std::string& csv_header() {
  static const std::string h = "check,params,lhs,rhs_exact,rhs_main,slack_log_q,passed,value_re,value_im";
  return h;
}

std::string render(const std::vector<BoundReport>& records, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::csv:
      out << csv_header() << '\n';
      for (const auto& r : records) {
        out << csv_quote(r.check) << ',' << csv_quote(joined_params(r.params)) << ',' << num(r.lhs) << ','
            << opt_num(r.rhs_exact) << ',' << opt_num(r.rhs_main) << ',' << opt_num(r.slack_log_q) << ','
            << (r.passed ? "true" : "false") << ',' << (r.value ? num(r.value->real()) : "") << ','
            << (r.value ? num(r.value->imag()) : "") << '\n';
      }
      break;
    case Format::json: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : records) {
        nlohmann::ordered_json o;
        o["check"] = r.check;
        auto params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        o["params"] = std::move(params);
        o["lhs"] = r.lhs;
        o["rhs_exact"] = opt_json(r.rhs_exact);
        o["rhs_main"] = opt_json(r.rhs_main);
        o["slack_log_q"] = opt_json(r.slack_log_q);
        o["passed"] = r.passed;
        if (r.value) o["value"] = {{"re", r.value->real()}, {"im", r.value->imag()}};
        arr.push_back(std::move(o));
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::pretty:
      for (const auto& r : records) {
        out << (r.passed ? "[ok]   " : "[FAIL] ") << r.check;
        for (const auto& [k, v] : r.params) out << ' ' << k << '=' << v;
        out << "  lhs=" << num(r.lhs);
        if (r.rhs_exact) out << " rhs_exact=" << num(*r.rhs_exact);
        if (r.rhs_main) out << " rhs_main=" << num(*r.rhs_main);
        if (r.slack_log_q) out << " slack_log_q=" << num(*r.slack_log_q);
        if (r.value) out << " value=" << num(r.value->real()) << (r.value->imag() < 0 ? "" : "+") << num(r.value->imag()) << 'i';
        if (!r.note.empty()) out << "  # " << r.note;
        out << '\n';
      }
      break;
  }
  return out.str();
}

}  // namespace ffk
