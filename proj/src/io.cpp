#include "rmt/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rmt/errors.hpp"

namespace rmt {

nlohmann::json RunManifest::to_json() const { return {{"subcommand", subcommand}, {"params", params}}; }

std::string RunManifest::hash() const {
  const std::string s = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_csv(std::ostream& os, const RunManifest& m, const std::vector<std::string>& header,
               const std::vector<CsvRow>& rows) {
  os << "# manifest_hash=" << m.hash() << " manifest=" << m.to_json().dump() << '\n';
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const CsvRow& r : rows) {
    if (r.size() != header.size()) throw DomainError("write_csv: row width does not match the header");
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
}

void write_json(std::ostream& os, const RunManifest& m, const nlohmann::json& data) {
  nlohmann::json j{{"manifest", m.to_json()}, {"manifest_hash", m.hash()}, {"data", data}};
  os << j.dump(2) << '\n';
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string loglog_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<PlotSeries>& series, const RunManifest& m) {
  const double W = 640, H = 420, L = 70, R = 160, T = 40, B = 50;
  double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = HUGE_VAL, ymax = -HUGE_VAL;
  for (const auto& s : series)
    for (size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      xmin = std::min(xmin, std::log10(s.x[i]));
      xmax = std::max(xmax, std::log10(s.x[i]));
      ymin = std::min(ymin, std::log10(s.y[i]));
      ymax = std::max(ymax, std::log10(s.y[i]));
    }
  if (!(xmax >= xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  xmin = std::floor(xmin * 10) / 10 - 0.05;
  xmax = std::ceil(xmax * 10) / 10 + 0.05;
  ymin = std::floor(ymin);
  ymax = std::ceil(ymax);
  if (ymax - ymin < 1) ymax = ymin + 1;
  auto px = [&](double lx) { return L + (lx - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double ly) { return H - B - (ly - ymin) / (ymax - ymin) * (H - T - B); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<!-- manifest_hash=" << m.hash() << " manifest=" << xml_escape(m.to_json().dump()) << " -->\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << fmt(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(title)
     << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e) {
    os << "<line x1=\"" << L << "\" x2=\"" << W - R << "\" y1=\"" << fmt(py(e)) << "\" y2=\"" << fmt(py(e))
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << fmt(py(e) + 4) << "\" text-anchor=\"end\" font-size=\"11\">1e" << e
       << "</text>\n";
  }
  for (const auto& s : series)
    for (double x : s.x) {
      if (!(x > 0.0)) continue;
      const double X = px(std::log10(x));
      os << "<text x=\"" << fmt(X) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" font-size=\"11\">"
         << format_number(x) << "</text>\n";
    }
  os << "<text x=\"" << fmt(L + (W - L - R) / 2) << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << xml_escape(xlabel) << "</text>\n";
  os << "<text x=\"16\" y=\"" << fmt(T + (H - T - B) / 2) << "\" transform=\"rotate(-90 16 " << fmt(T + (H - T - B) / 2)
     << ")\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(ylabel) << "</text>\n";
  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* c = colors[k % 6];
    std::string pts;
    for (size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      const double X = px(std::log10(s.x[i])), Y = py(std::log10(s.y[i]));
      pts += fmt(X) + "," + fmt(Y) + " ";
      os << "<circle cx=\"" << fmt(X) << "\" cy=\"" << fmt(Y) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    }
    os << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << c << "\"/>\n";
    const double ly = T + 16 + 18 * static_cast<double>(k);
    os << "<line x1=\"" << W - R + 10 << "\" x2=\"" << W - R + 30 << "\" y1=\"" << fmt(ly - 4) << "\" y2=\""
       << fmt(ly - 4) << "\" stroke=\"" << c << "\"/>\n";
    os << "<text x=\"" << W - R + 36 << "\" y=\"" << fmt(ly) << "\" font-size=\"11\">" << xml_escape(s.name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error("write to '" + path + "' failed");
}

namespace {

double parse_double(const std::string& s, const std::string& ctx) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  const auto r = std::from_chars(b, e, v);
  if (r.ec != std::errc() || r.ptr != e) throw DomainError("cannot parse number '" + s + "' in '" + ctx + "'");
  return v;
}

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

}  // namespace

std::vector<double> parse_polynomial(const std::string& input) {
  const std::string s = strip(input);
  if (s.empty()) throw DomainError("empty polynomial");
  std::vector<double> c;
  size_t i = 0;
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1.0 : 1.0;
      ++i;
    } else if (i != 0) {
      throw DomainError("expected + or - in polynomial '" + input + "'");
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') {
      // exponent sign in 1e-3
      if ((s[j] == 'e' || s[j] == 'E') && j + 1 < s.size() && (s[j + 1] == '-' || s[j + 1] == '+')) ++j;
      ++j;
    }
    const std::string term = s.substr(i, j - i);
    if (term.empty()) throw DomainError("empty term in polynomial '" + input + "'");
    const size_t xpos = term.find('x');
    double coef = 1.0;
    int deg = 0;
    if (xpos == std::string::npos) {
      coef = parse_double(term, input);
    } else {
      std::string cs = term.substr(0, xpos);
      if (!cs.empty() && cs.back() == '*') cs.pop_back();
      if (!cs.empty()) coef = parse_double(cs, input);
      const std::string rest = term.substr(xpos + 1);
      if (rest.empty()) {
        deg = 1;
      } else if (rest[0] == '^' && rest.size() > 1) {
        int d = 0;
        const auto r = std::from_chars(rest.data() + 1, rest.data() + rest.size(), d);
        if (r.ec != std::errc() || r.ptr != rest.data() + rest.size() || d < 0)
          throw DomainError("bad exponent in '" + input + "'");
        deg = d;
      } else {
        throw DomainError("bad term '" + term + "' in '" + input + "'");
      }
    }
    if (static_cast<int>(c.size()) <= deg) c.resize(deg + 1, 0.0);
    c[deg] += sign * coef;
    i = j;
  }
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

std::vector<int> parse_int_list(const std::string& input) {
  const std::string s = strip(input);
  std::vector<int> out;
  const size_t dots = s.find("..");
  auto to_int = [&](const std::string& t) {
    int v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
      throw DomainError("cannot parse integer '" + t + "' in '" + input + "'");
    return v;
  };
  if (dots != std::string::npos) {
    const int a = to_int(s.substr(0, dots)), b = to_int(s.substr(dots + 2));
    if (b < a) throw DomainError("empty range '" + input + "'");
    for (int k = a; k <= b; ++k) out.push_back(k);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(to_int(tok));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& input) {
  std::vector<double> out;
  std::stringstream ss(strip(input));
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_double(tok, input));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

}  // namespace rmt
