#include "tct/harness/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "tct/errors.hpp"
#include "tct/rng.hpp"

namespace tct {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n\"");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n\"");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

Dataset load_dataset(const std::string& path, std::uint64_t split_seed,
                     const std::string& label_column, double train_fraction) {
  std::ifstream in(path);
  if (!in) throw IoError("load_dataset: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw IoError("load_dataset: empty file");
  std::vector<std::string> header = split_csv_line(line);
  std::size_t num_cols = header.size();
  if (num_cols < 2) throw IoError("load_dataset: need a feature and a label");

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != num_cols)
      throw IoError("load_dataset: ragged row in " + path);
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw IoError("load_dataset: no data rows");

  std::size_t label_idx = num_cols - 1;
  if (!label_column.empty()) {
    auto it = std::find(header.begin(), header.end(), label_column);
    if (it != header.end()) {
      label_idx = static_cast<std::size_t>(it - header.begin());
    } else {
      char* end = nullptr;
      long v = std::strtol(label_column.c_str(), &end, 10);
      if (end != label_column.c_str() + label_column.size() || v < 0 ||
          static_cast<std::size_t>(v) >= num_cols)
        throw IoError("load_dataset: no such label column " + label_column);
      label_idx = static_cast<std::size_t>(v);
    }
  }

  // Class ids in lexicographic order of the label strings.
  std::map<std::string, int> class_ids;
  for (const auto& row : rows) class_ids[row[label_idx]];
  int next_id = 0;
  for (auto& [name, id] : class_ids) id = next_id++;
  if (class_ids.size() < 2)
    throw DegenerateDataset("load_dataset: a single class in " + path);

  // A column is numeric when every value parses as a number.
  std::vector<char> numeric(num_cols, 1);
  for (std::size_t c = 0; c < num_cols; ++c) {
    if (c == label_idx) continue;
    for (const auto& row : rows) {
      double v;
      if (!parse_double(row[c], v)) {
        numeric[c] = 0;
        break;
      }
    }
  }
  std::vector<std::map<std::string, std::size_t>> categories(num_cols);
  for (std::size_t c = 0; c < num_cols; ++c) {
    if (c == label_idx || numeric[c]) continue;
    for (const auto& row : rows) categories[c][row[c]];
    std::size_t slot = 0;
    for (auto& [value, pos] : categories[c]) pos = slot++;
  }

  Rng rng = Rng(split_seed).substream("dataset-shuffle");
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);

  // Stratified split: per class, the first ~train_fraction go to train.
  std::vector<std::vector<std::size_t>> by_class(class_ids.size());
  for (std::size_t i : order)
    by_class[class_ids[rows[i][label_idx]]].push_back(i);
  std::vector<char> in_train(rows.size(), 0);
  for (const auto& members : by_class) {
    std::size_t n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(members.size())));
    for (std::size_t j = 0; j < members.size(); ++j)
      in_train[members[j]] = j < n_train ? 1 : 0;
  }

  // Encode features: numeric as-is, categorical one-hot.
  auto encode = [&](const std::vector<std::string>& row) {
    std::vector<double> features;
    for (std::size_t c = 0; c < num_cols; ++c) {
      if (c == label_idx) continue;
      if (numeric[c]) {
        double v = 0.0;
        parse_double(row[c], v);
        features.push_back(v);
      } else {
        std::vector<double> onehot(categories[c].size(), 0.0);
        onehot[categories[c].at(row[c])] = 1.0;
        features.insert(features.end(), onehot.begin(), onehot.end());
      }
    }
    return features;
  };

  Dataset out;
  out.name = path;
  out.num_classes = static_cast<int>(class_ids.size());
  out.class_names.resize(class_ids.size());
  for (const auto& [name, id] : class_ids) out.class_names[id] = name;
  for (std::size_t c = 0; c < num_cols; ++c) {
    if (c == label_idx) continue;
    if (numeric[c]) {
      out.feature_names.push_back(header[c]);
    } else {
      for (const auto& [value, pos] : categories[c])
        out.feature_names.push_back(header[c] + "=" + value);
    }
  }

  for (std::size_t i : order) {
    LabeledExample e{encode(rows[i]), class_ids[rows[i][label_idx]]};
    (in_train[i] ? out.train : out.test).push_back(std::move(e));
  }

  // Standardize the originally-numeric coordinates with train statistics.
  std::size_t dim = out.train.empty() ? 0 : out.train.front().features.size();
  std::vector<char> standardize(dim, 0);
  {
    std::size_t pos = 0;
    for (std::size_t c = 0; c < num_cols; ++c) {
      if (c == label_idx) continue;
      if (numeric[c]) {
        standardize[pos++] = 1;
      } else {
        pos += categories[c].size();
      }
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    if (!standardize[j]) continue;
    double mean = 0.0;
    for (const auto& e : out.train) mean += e.features[j];
    mean /= static_cast<double>(out.train.size());
    double var = 0.0;
    for (const auto& e : out.train) {
      double d = e.features[j] - mean;
      var += d * d;
    }
    var /= static_cast<double>(out.train.size());
    double sd = std::sqrt(var);
    for (auto* part : {&out.train, &out.test}) {
      for (auto& e : *part)
        e.features[j] = sd > 0.0 ? (e.features[j] - mean) / sd : 0.0;
    }
  }
  return out;
}

double majority_baseline(const Dataset& dataset) {
  std::vector<std::size_t> counts(dataset.num_classes, 0);
  for (const auto& e : dataset.train) ++counts[e.label];
  int majority = static_cast<int>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
  if (dataset.test.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& e : dataset.test)
    if (e.label == majority) ++hits;
  return static_cast<double>(hits) / static_cast<double>(dataset.test.size());
}

}  // namespace tct
