#include "mvkm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace mvkm {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string read_text_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + file.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + file.string());
  out << content;
  if (!out) throw DataError("write failed: " + file.string());
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::size_t len = end - start;
    if (len > 0 && text[start + len - 1] == '\r') --len;
    if (len > 0) lines.emplace_back(text, start, len);
    start = end + 1;
  }
  return lines;
}

std::string_view trimmed(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
  return cell;
}

double parse_cell(std::string_view cell, const fs::path& file, Index row, Index col) {
  cell = trimmed(cell);
  double value = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
    throw DataError("non-numeric cell in " + file.string() + " at row " + std::to_string(row) +
                    ", column " + std::to_string(col));
  if (!std::isfinite(value))
    throw DataError("non-finite value in " + file.string() + " at row " + std::to_string(row) +
                    ", column " + std::to_string(col));
  return value;
}

MatrixX<double> load_view_csv(const fs::path& file, bool has_header) {
  const std::string text = read_text_file(file);
  auto lines = split_lines(text);
  if (has_header && !lines.empty()) lines.erase(lines.begin());
  if (lines.empty()) throw DataError("empty view: " + file.string());

  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size());
  Index width = -1;
  for (Index r = 0; r < static_cast<Index>(lines.size()); ++r) {
    const std::string& line = lines[static_cast<std::size_t>(r)];
    std::vector<double> row;
    std::size_t start = 0;
    Index col = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::size_t len = (comma == std::string::npos ? line.size() : comma) - start;
      row.push_back(parse_cell(std::string_view(line).substr(start, len), file, r, col));
      ++col;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (width < 0) width = col;
    if (col != width)
      throw DataError("ragged row in " + file.string() + " at row " + std::to_string(r));
    rows.push_back(std::move(row));
  }

  MatrixX<double> out(static_cast<Index>(rows.size()), width);
  for (Index r = 0; r < out.rows(); ++r)
    for (Index c = 0; c < out.cols(); ++c)
      out(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return out;
}

Eigen::VectorXi load_labels_csv(const fs::path& file) {
  const std::string text = read_text_file(file);
  const auto lines = split_lines(text);
  if (lines.empty()) throw DataError("empty labels file: " + file.string());
  Eigen::VectorXi labels(static_cast<Index>(lines.size()));
  for (Index r = 0; r < labels.size(); ++r) {
    const auto cell = trimmed(lines[static_cast<std::size_t>(r)]);
    int value = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size())
      throw DataError("non-integer label in " + file.string() + " at row " + std::to_string(r));
    labels[r] = value;
  }
  return labels;
}

}  // namespace

MultiViewDataset load_dataset(const fs::path& manifest_path) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed manifest " + manifest_path.string() + ": " + e.what());
  }
  if (!manifest.contains("views") || !manifest["views"].is_array() || manifest["views"].empty())
    throw DataError("manifest " + manifest_path.string() + " must list at least one view");

  const fs::path base = manifest_path.parent_path();
  const bool has_header = manifest.value("has_header", false);

  MultiViewDataset ds;
  ds.name = manifest.value("name", std::string{});
  for (const auto& entry : manifest["views"]) {
    if (!entry.is_string()) throw DataError("manifest view entries must be paths");
    ds.views.push_back(load_view_csv(base / entry.get<std::string>(), has_header));
  }

  const Index n = ds.sample_count();
  for (Index h = 1; h < ds.view_count(); ++h)
    if (ds.view(h).rows() != n)
      throw DataError("view row counts differ: view 0 has " + std::to_string(n) + " rows, view " +
                      std::to_string(h) + " has " + std::to_string(ds.view(h).rows()));

  if (manifest.contains("labels") && !manifest["labels"].is_null()) {
    if (!manifest["labels"].is_string()) throw DataError("manifest labels entry must be a path");
    Eigen::VectorXi labels = load_labels_csv(base / manifest["labels"].get<std::string>());
    if (labels.size() != n)
      throw DataError("label count " + std::to_string(labels.size()) +
                      " differs from sample count " + std::to_string(n));
    ds.labels = std::move(labels);
  }
  return ds;
}

namespace {

std::string view_to_csv(const MatrixX<double>& x) {
  std::string out;
  out.reserve(static_cast<std::size_t>(x.size()) * 12);
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(x(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace

fs::path save_dataset(const MultiViewDataset& ds, const fs::path& directory) {
  require_valid(ds);
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw DataError("cannot create directory " + directory.string() + ": " + ec.message());

  nlohmann::json manifest;
  manifest["name"] = ds.name.empty() ? "dataset" : ds.name;
  manifest["views"] = nlohmann::json::array();
  for (Index h = 0; h < ds.view_count(); ++h) {
    const std::string file = "view" + std::to_string(h + 1) + ".csv";
    write_text_file(directory / file, view_to_csv(ds.view(h)));
    manifest["views"].push_back(file);
  }
  if (ds.labels) {
    std::string out;
    for (Index i = 0; i < ds.labels->size(); ++i)
      out += std::to_string((*ds.labels)[i]) + "\n";
    write_text_file(directory / "labels.csv", out);
    manifest["labels"] = "labels.csv";
  } else {
    manifest["labels"] = nullptr;
  }
  manifest["has_header"] = false;

  const fs::path manifest_path = directory / "manifest.json";
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  return manifest_path;
}

void write_scatter_csv(const MultiViewDataset& ds, const fs::path& file) {
  for (Index h = 0; h < ds.view_count(); ++h)
    if (ds.dim(h) != 2)
      throw DataError("scatter output needs 2-D views; view " + std::to_string(h) + " has " +
                      std::to_string(ds.dim(h)) + " features");
  std::string out = "view,sample,label,x,y\n";
  for (Index h = 0; h < ds.view_count(); ++h)
    for (Index i = 0; i < ds.sample_count(); ++i) {
      const int label = ds.labels ? (*ds.labels)[i] : -1;
      out += std::to_string(h + 1) + ',' + std::to_string(i) + ',' + std::to_string(label) + ',' +
             format_double(ds.view(h)(i, 0)) + ',' + format_double(ds.view(h)(i, 1)) + '\n';
    }
  write_text_file(file, out);
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json j;
  j["ok"] = report.ok;
  j["n"] = report.n;
  j["s"] = report.s;
  j["dims"] = report.dims;
  j["has_labels"] = report.has_labels;
  j["issues"] = nlohmann::json::array();
  for (const auto& issue : report.issues) {
    nlohmann::json item;
    item["what"] = issue.what;
    if (issue.view >= 0) item["view"] = issue.view;
    if (issue.row >= 0) {
      item["row"] = issue.row;
      item["col"] = issue.col;
    }
    j["issues"].push_back(item);
  }
  return j;
}

nlohmann::json to_json(const MetricReport& report) {
  return nlohmann::json{{"nmi", report.nmi},         {"ari", report.ari},
                        {"acc", report.acc},         {"recall", report.recall},
                        {"precision", report.precision}, {"f_score", report.f_score}};
}

nlohmann::json to_json(const FitResult& result) {
  nlohmann::json j;
  j["assignments"] = std::vector<int>(result.memberships.assign.data(),
                                      result.memberships.assign.data() +
                                          result.memberships.assign.size());
  j["cluster_count"] = result.memberships.cluster_count;
  j["weights"] = std::vector<double>(result.weights.data(),
                                     result.weights.data() + result.weights.size());
  j["centers"] = nlohmann::json::array();
  for (const auto& a : result.centers) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index k = 0; k < a.rows(); ++k) {
      nlohmann::json row = nlohmann::json::array();
      for (Index d = 0; d < a.cols(); ++d) row.push_back(a(k, d));
      rows.push_back(row);
    }
    j["centers"].push_back(rows);
  }
  j["objective_trace"] = result.objective_trace;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["empty_clusters"] = result.empty_clusters;
  j["zero_cost_view_weights"] = result.zero_cost_view_weights;
  if (result.beta.size() > 0)
    j["beta"] = std::vector<double>(result.beta.data(), result.beta.data() + result.beta.size());
  j["stabilizer"] = result.stabilizer;
  return j;
}

std::string metric_csv_header() { return "nmi,ari,acc,recall,precision,f_score"; }

std::string metric_csv_row(const MetricReport& report) {
  return format_double(report.nmi) + ',' + format_double(report.ari) + ',' +
         format_double(report.acc) + ',' + format_double(report.recall) + ',' +
         format_double(report.precision) + ',' + format_double(report.f_score);
}

}  // namespace mvkm
