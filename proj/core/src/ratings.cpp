#include "osm/ratings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "osm/potentials.hpp"
#include "osm/rng.hpp"

namespace osm {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + sep.size();
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  const std::string tmp(s);
  if (tmp.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size() && std::isfinite(out);
}

bool parse_i64(std::string_view s, std::int64_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

RatingsDataset parse_ratings(std::istream& in, RatingsFormat format, bool strict, LoadReport* report) {
  RatingsDataset d;
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = {};
  std::unordered_map<std::string, std::size_t> user_index, item_index;
  std::map<std::pair<std::size_t, ItemId>, std::size_t> seen;
  const std::string_view sep = format == RatingsFormat::csv ? "," : "::";

  std::string line;
  std::size_t line_no = 0;
  bool header_pending = format == RatingsFormat::csv;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    auto fields = split_fields(body, sep);
    RatingRecord rec;
    bool ok = fields.size() == 3 || fields.size() == 4;
    if (ok) {
      for (auto& f : fields) f = trim(f);
      ok = !fields[0].empty() && !fields[1].empty() && parse_double(fields[2], rec.rating);
    }
    if (ok && fields.size() == 4 && !fields[3].empty()) {
      std::int64_t ts = 0;
      ok = parse_i64(fields[3], ts);
      rec.timestamp = ts;
    }
    if (!ok) {
      if (strict) throw DataError(fmt::format("malformed ratings line {}: '{}'", line_no, line));
      rep.malformed_lines.push_back(line_no);
      continue;
    }
    auto [uit, unew] = user_index.try_emplace(std::string(fields[0]), d.user_ids.size());
    if (unew) d.user_ids.emplace_back(fields[0]);
    auto [iit, inew] = item_index.try_emplace(std::string(fields[1]), d.item_ids.size());
    if (inew) d.item_ids.emplace_back(fields[1]);
    rec.user = uit->second;
    rec.item = iit->second;
    auto [sit, fresh] = seen.try_emplace({rec.user, rec.item}, d.records.size());
    if (fresh) {
      d.records.push_back(rec);
    } else {
      d.records[sit->second] = rec;
      ++rep.duplicates;
    }
  }
  return d;
}

RatingsDataset load_ratings(const std::string& path, RatingsFormat format, bool strict, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ratings file " + path);
  return parse_ratings(in, format, strict, report);
}

int grade_rating(double rating, const RatingScale& scale, int n_grades) {
  if (!(rating >= scale.min && rating <= scale.max)) {
    throw DataError(fmt::format("rating {} outside scale [{}, {}]", rating, scale.min, scale.max));
  }
  const double pos = (rating - scale.min) * n_grades / (scale.max - scale.min);
  return std::min(n_grades, static_cast<int>(std::floor(pos)) + 1);
}

GradedDataset grade_ratings(const RatingsDataset& d, const RatingScale& scale, int n_grades) {
  GradedDataset g;
  g.user_ids = d.user_ids;
  g.item_ids = d.item_ids;
  g.n_grades = n_grades;
  g.records.reserve(d.records.size());
  for (const auto& r : d.records) g.records.push_back({r.user, r.item, grade_rating(r.rating, scale, n_grades)});
  return g;
}

std::vector<double> item_entropies(const GradedDataset& d) {
  std::vector<std::vector<double>> counts(d.n_items(), std::vector<double>(d.n_grades + 1, 0.0));
  for (const auto& r : d.records) counts[r.item][r.grade] += 1.0;
  std::vector<double> h(d.n_items(), 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double total = std::accumulate(counts[i].begin(), counts[i].end(), 0.0);
    if (total == 0.0) continue;
    for (double c : counts[i]) {
      if (c > 0.0) h[i] -= (c / total) * std::log(c / total);
    }
  }
  return h;
}

GradedDataset entropy_filter(const GradedDataset& d) {
  const auto h = item_entropies(d);
  std::vector<ItemId> order(d.n_items());
  std::iota(order.begin(), order.end(), ItemId{0});
  std::stable_sort(order.begin(), order.end(), [&](ItemId a, ItemId b) { return h[a] < h[b]; });
  const std::size_t n_remove = d.n_items() / 2;
  std::vector<bool> keep(d.n_items(), true);
  for (std::size_t r = 0; r < n_remove; ++r) keep[order[r]] = false;

  GradedDataset out;
  out.user_ids = d.user_ids;
  out.n_grades = d.n_grades;
  std::vector<ItemId> remap(d.n_items(), 0);
  for (ItemId i = 0; i < d.n_items(); ++i) {
    if (!keep[i]) continue;
    remap[i] = out.item_ids.size();
    out.item_ids.push_back(d.item_ids[i]);
  }
  for (const auto& r : d.records) {
    if (keep[r.item]) out.records.push_back({r.user, remap[r.item], r.grade});
  }
  return out;
}

SplitSpec SplitSpec::for_train_size(std::size_t n_train, std::uint64_t seed) {
  return SplitSpec{n_train, n_train + 10, seed};
}

DataSplit train_test_split(const GradedDataset& d, const SplitSpec& spec) {
  if (spec.n_train == 0 || spec.min_ratings < spec.n_train + 10) {
    throw std::invalid_argument(fmt::format(
        "split spec: min_ratings ({}) must be at least n_train ({}) + 10", spec.min_ratings, spec.n_train));
  }
  std::vector<std::vector<std::pair<ItemId, int>>> by_user(d.n_users());
  for (const auto& r : d.records) by_user[r.user].emplace_back(r.item, r.grade);
  DataSplit out;
  for (std::size_t u = 0; u < by_user.size(); ++u) {
    auto& items = by_user[u];
    if (items.size() < spec.min_ratings) continue;
    std::sort(items.begin(), items.end());
    Rng rng = make_rng(spec.seed, u);
    std::shuffle(items.begin(), items.end(), rng);
    UserItems train{u, {items.begin(), items.begin() + static_cast<std::ptrdiff_t>(spec.n_train)}};
    UserItems test{u, {items.begin() + static_cast<std::ptrdiff_t>(spec.n_train), items.end()}};
    std::sort(train.items.begin(), train.items.end());
    std::sort(test.items.begin(), test.items.end());
    out.train.push_back(std::move(train));
    out.test.push_back(std::move(test));
  }
  return out;
}

UserRanking to_user_ranking(const UserItems& u) {
  if (u.items.empty()) throw std::invalid_argument("to_user_ranking: user has no items");
  UserRanking r;
  std::map<Object, double> grades;
  for (std::size_t o = 0; o < u.items.size(); ++o) {
    r.items.push_back(u.items[o].first);
    grades[static_cast<Object>(o)] = u.items[o].second;
  }
  r.partition = from_graded_ratings(grades);
  return r;
}

}  // namespace osm
