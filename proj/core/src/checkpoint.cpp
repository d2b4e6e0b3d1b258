#include "osm/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace osm {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error("checkpoint: " + what);
}

std::string next_line(std::istream& in, const char* expect) {
  std::string line;
  if (!std::getline(in, line)) bad(fmt::format("unexpected end of file, expected {}", expect));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string keyed(std::istream& in, const std::string& key) {
  const auto line = next_line(in, key.c_str());
  if (line.rfind(key + " ", 0) != 0) bad(fmt::format("expected '{}', got '{}'", key, line));
  return line.substr(key.size() + 1);
}

std::vector<double> parse_doubles(const std::string& text, std::size_t expect, const char* what) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) bad(fmt::format("cannot parse '{}' in {}", tok, what));
    out.push_back(v);
  }
  if (out.size() != expect) bad(fmt::format("{} has {} values, expected {}", what, out.size(), expect));
  return out;
}

template <typename T>
T parse_int(const std::string& s, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) bad(fmt::format("bad {} '{}'", what, s));
  return v;
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  const auto& p = ckpt.params;
  p.validate();
  out << "osm-checkpoint\n";
  out << "format_version " << kCheckpointFormatVersion << '\n';
  out << "n_items " << p.n_items() << '\n';
  out << "K " << p.K << '\n';
  if (ckpt.seed) out << "seed " << *ckpt.seed << '\n';
  out << fmt::format("nu {}\n", p.nu);
  out << "u";
  for (double v : p.u) out << fmt::format(" {}", v);
  out << "\nW\n";
  for (std::size_t i = 0; i < p.n_items(); ++i) {
    for (std::size_t k = 0; k < p.K; ++k) out << (k ? " " : "") << fmt::format("{}", p.w(i, k));
    out << '\n';
  }
}

Checkpoint read_checkpoint(std::istream& in) {
  if (next_line(in, "header") != "osm-checkpoint") bad("missing 'osm-checkpoint' header");
  const int version = parse_int<int>(keyed(in, "format_version"), "format_version");
  if (version != kCheckpointFormatVersion) bad(fmt::format("unsupported format_version {}", version));
  const auto n = parse_int<std::size_t>(keyed(in, "n_items"), "n_items");
  const auto K = parse_int<std::size_t>(keyed(in, "K"), "K");
  Checkpoint ckpt;
  auto line = next_line(in, "nu");
  if (line.rfind("seed ", 0) == 0) {
    ckpt.seed = parse_int<std::uint64_t>(line.substr(5), "seed");
    line = next_line(in, "nu");
  }
  if (line.rfind("nu ", 0) != 0) bad(fmt::format("expected 'nu', got '{}'", line));
  CFParams p = CFParams::zeros(n, K);
  p.nu = parse_doubles(line.substr(3), 1, "nu")[0];
  line = next_line(in, "u");
  if (line != "u" && line.rfind("u ", 0) != 0) bad(fmt::format("expected 'u', got '{}'", line));
  p.u = parse_doubles(line.size() > 1 ? line.substr(2) : std::string(), n, "u");
  if (next_line(in, "W") != "W") bad("expected 'W'");
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = parse_doubles(next_line(in, "W row"), K, "W row");
    for (std::size_t k = 0; k < K; ++k) p.w(i, k) = row[k];
  }
  p.validate();
  ckpt.params = std::move(p);
  return ckpt;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_checkpoint(out, ckpt);
  if (!out) throw std::runtime_error("failed writing " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_checkpoint(in);
}

}  // namespace osm
