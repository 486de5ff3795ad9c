#include "roughkit/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace roughkit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io_error, "cannot open for writing: " + tmp.string());
    out << text;
    if (!out) fail(ErrorCode::io_error, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) fail(ErrorCode::io_error, "rename failed: " + target.string());
}

std::string load_text(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open: " + file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double parse_cell(const std::string& cell, const std::string& file, int row) {
  try {
    size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size() && cell.find_first_not_of(" \t\r", pos) != std::string::npos)
      throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::io_error,
         file + ": row " + std::to_string(row) + ": bad number '" + cell + "'");
  }
}

std::vector<std::vector<double>> read_csv_rows(const std::string& file,
                                               size_t expected_cols) {
  std::istringstream in(load_text(file));
  std::string line;
  if (!std::getline(in, line))
    fail(ErrorCode::io_error, file + ": empty file");
  const size_t cols =
      expected_cols ? expected_cols : split_csv_line(line).size();
  std::vector<std::vector<double>> rows;
  int rowno = 1;
  while (std::getline(in, line)) {
    ++rowno;
    if (line.empty() || line == "\r") continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto cells = split_csv_line(line);
    if (cells.size() != cols)
      fail(ErrorCode::io_error, file + ": row " + std::to_string(rowno) +
                                    " has " + std::to_string(cells.size()) +
                                    " columns, expected " + std::to_string(cols));
    std::vector<double> vals;
    for (const auto& c : cells) vals.push_back(parse_cell(c, file, rowno));
    rows.push_back(std::move(vals));
  }
  return rows;
}

}  // namespace

void save_path_csv(const GridPath& path, const std::string& file) {
  path.validate();
  std::ostringstream out;
  out << "t";
  for (int j = 1; j <= path.dim(); ++j) out << ",x" << j;
  out << "\n";
  for (int i = 0; i < path.points(); ++i) {
    out << format_double(path.times[i]);
    for (int j = 0; j < path.dim(); ++j)
      out << "," << format_double(path.values[i](j));
    out << "\n";
  }
  write_text_atomic(file, out.str());
}

GridPath load_path_csv(const std::string& file) {
  const auto rows = read_csv_rows(file, 0);
  if (rows.size() < 2 || rows[0].size() < 2)
    fail(ErrorCode::io_error, file + ": need >= 2 rows of t plus >= 1 column");
  GridPath path;
  const int m = static_cast<int>(rows[0].size()) - 1;
  for (const auto& r : rows) {
    path.times.push_back(r[0]);
    VectorXd v(m);
    for (int j = 0; j < m; ++j) v(j) = r[j + 1];
    path.values.push_back(v);
  }
  path.validate();
  return path;
}

void save_area_csv(const LevyIncrements& area, const std::string& file) {
  const int m = area.dim();
  std::ostringstream out;
  out << "i";
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= m; ++c) out << ",X" << r << c;
  out << "\n";
  for (int i = 0; i < area.count(); ++i) {
    out << i;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        out << "," << format_double(area.blocks[i](r, c));
    out << "\n";
  }
  write_text_atomic(file, out.str());
}

LevyIncrements load_area_csv(const std::string& file) {
  const auto rows = read_csv_rows(file, 0);
  if (rows.empty()) fail(ErrorCode::io_error, file + ": no data rows");
  const int mm = static_cast<int>(rows[0].size()) - 1;
  const int m = static_cast<int>(std::lround(std::sqrt(double(mm))));
  if (m * m != mm)
    fail(ErrorCode::io_error, file + ": column count is not 1 + m*m");
  LevyIncrements area;
  for (const auto& r : rows) {
    MatrixXd blk(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) blk(a, b) = r[1 + a * m + b];
    area.blocks.push_back(blk);
  }
  return area;
}

void save_rough_path(const RoughPathGrid& rp, const std::string& stem) {
  save_path_csv(rp.path, stem + ".csv");
  save_area_csv(rp.area, stem + ".area.csv");
  json meta;
  meta["alpha"] = rp.alpha;
  meta["geometric"] = rp.geometric;
  meta["tol_chen"] = rp.tol.tol_chen;
  meta["tol_solve"] = rp.tol.tol_solve;
  meta["sewing_constant_p"] = rp.tol.sewing_constant_p;
  meta["sewing_constant_alpha"] = rp.tol.sewing_constant_alpha;
  save_json(meta.dump(2), stem + ".json");
}

RoughPathGrid load_rough_path(const std::string& stem) {
  GridPath path = load_path_csv(stem + ".csv");
  LevyIncrements area = load_area_csv(stem + ".area.csv");
  json meta;
  try {
    meta = json::parse(load_text(stem + ".json"));
  } catch (const json::exception& e) {
    fail(ErrorCode::io_error, stem + ".json: " + e.what());
  }
  Tolerances tol;
  tol.tol_chen = meta.value("tol_chen", tol.tol_chen);
  tol.tol_solve = meta.value("tol_solve", tol.tol_solve);
  tol.sewing_constant_p = meta.value("sewing_constant_p", 0.0);
  tol.sewing_constant_alpha = meta.value("sewing_constant_alpha", 0.0);
  return RoughPathGrid(std::move(path), std::move(area),
                       meta.at("alpha").get<double>(),
                       meta.value("geometric", false), tol);
}

void save_controlled(const ControlledGridPath& y, const GridPath& grid, int m,
                     const std::string& stem) {
  if (y.points() != grid.points())
    fail(ErrorCode::dimension_mismatch, "save_controlled: grid size mismatch");
  const int d = static_cast<int>(y.values[0].rows());
  std::ostringstream out;
  out << "t";
  for (int k = 0; k < d * y.width; ++k) out << ",y" << k + 1;
  for (int k = 0; k < d * y.width * m; ++k) out << ",dy" << k + 1;
  out << "\n";
  for (int i = 0; i < y.points(); ++i) {
    out << format_double(grid.times[i]);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < y.width; ++c)
        out << "," << format_double(y.values[i](r, c));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < y.width * m; ++c)
        out << "," << format_double(y.gubinelli[i](r, c));
    out << "\n";
  }
  write_text_atomic(stem + ".csv", out.str());
  json meta;
  meta["d"] = d;
  meta["width"] = y.width;
  meta["m"] = m;
  save_json(meta.dump(2), stem + ".json");
}

ControlledGridPath load_controlled(const std::string& stem) {
  json meta;
  try {
    meta = json::parse(load_text(stem + ".json"));
  } catch (const json::exception& e) {
    fail(ErrorCode::io_error, stem + ".json: " + e.what());
  }
  const int d = meta.at("d").get<int>();
  const int width = meta.at("width").get<int>();
  const int m = meta.at("m").get<int>();
  const auto rows =
      read_csv_rows(stem + ".csv", 1 + d * width + d * width * m);
  ControlledGridPath y;
  y.width = width;
  for (const auto& r : rows) {
    MatrixXd val(d, width), gub(d, width * m);
    size_t k = 1;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < width; ++b) val(a, b) = r[k++];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < width * m; ++b) gub(a, b) = r[k++];
    y.values.push_back(val);
    y.gubinelli.push_back(gub);
  }
  return y;
}

void save_json(const std::string& json_text, const std::string& file) {
  write_text_atomic(file, json_text + "\n");
}

}  // namespace roughkit
