#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osm/learning.hpp"

namespace osm {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RatingRecord {
  std::size_t user = 0;
  ItemId item = 0;
  double rating = 0.0;
  std::optional<std::int64_t> timestamp;
};

// Ratings with dense user and item indices (in order of first appearance).
struct RatingsDataset {
  std::vector<RatingRecord> records;
  std::vector<std::string> user_ids;
  std::vector<std::string> item_ids;

  std::size_t n_users() const { return user_ids.size(); }
  std::size_t n_items() const { return item_ids.size(); }
};

enum class RatingsFormat {
  movielens_dcolon,  // user::item::rating[::timestamp]
  csv,               // header line, then user,item,rating[,timestamp]
};

struct LoadReport {
  std::vector<std::size_t> malformed_lines;  // 1-based
  std::size_t duplicates = 0;                // (user, item) pairs overwritten
};

// Duplicate (user, item) pairs keep the last rating. In strict mode any
// malformed line raises DataError; otherwise such lines are skipped and
// listed in the report.
RatingsDataset parse_ratings(std::istream& in, RatingsFormat format, bool strict = true,
                             LoadReport* report = nullptr);
RatingsDataset load_ratings(const std::string& path, RatingsFormat format, bool strict = true,
                            LoadReport* report = nullptr);

struct RatingScale {
  double min = 0.5;
  double max = 5.0;
};

// Equal-length segments of [min, max]; grade 1 is the lowest segment.
int grade_rating(double rating, const RatingScale& scale, int n_grades = 5);

struct GradedRecord {
  std::size_t user = 0;
  ItemId item = 0;
  int grade = 0;
};

struct GradedDataset {
  std::vector<GradedRecord> records;
  std::vector<std::string> user_ids;
  std::vector<std::string> item_ids;
  int n_grades = 5;

  std::size_t n_users() const { return user_ids.size(); }
  std::size_t n_items() const { return item_ids.size(); }
};

GradedDataset grade_ratings(const RatingsDataset& d, const RatingScale& scale = {}, int n_grades = 5);

// H_i = -sum_r P_i(r) ln P_i(r) over the grade distribution of each item.
std::vector<double> item_entropies(const GradedDataset& d);

// Drops the floor(n_items / 2) items of lowest entropy (ties: lower index
// first) and re-indexes the remaining items densely.
GradedDataset entropy_filter(const GradedDataset& d);

struct SplitSpec {
  std::size_t n_train = 10;
  std::size_t min_ratings = 20;
  std::uint64_t seed = 0;

  // The pairing used for the standard protocol: min_ratings = n_train + 10.
  static SplitSpec for_train_size(std::size_t n_train, std::uint64_t seed);
};

struct UserItems {
  std::size_t user = 0;
  std::vector<std::pair<ItemId, int>> items;  // (item, grade)
};

struct DataSplit {
  std::vector<UserItems> train;
  std::vector<UserItems> test;  // test[i] belongs to the same user as train[i]
};

// Users with fewer than min_ratings ratings are dropped; each retained user
// gets n_train uniformly chosen training items and the rest for testing.
DataSplit train_test_split(const GradedDataset& d, const SplitSpec& spec);

// Builds the ordered partition of a user's graded items (local object o is
// items[o].first), highest grade first.
UserRanking to_user_ranking(const UserItems& u);

}  // namespace osm
