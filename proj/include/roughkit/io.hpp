#pragma once

#include <string>

#include "roughkit/types.hpp"

namespace roughkit {

// All writers are atomic (temp file in the same directory, then rename) and
// serialize floats with 17 significant digits so replays are byte-identical.

std::string format_double(double v);

void write_text_atomic(const std::string& path, const std::string& text);

// CSV with header "t,x1,...,xm", one row per grid point.
void save_path_csv(const GridPath& path, const std::string& file);
GridPath load_path_csv(const std::string& file);

// CSV with header "i,X11,X12,...,Xmm" (row-major blocks), one row per step.
void save_area_csv(const LevyIncrements& area, const std::string& file);
LevyIncrements load_area_csv(const std::string& file);

// A rough path is stored as <stem>.csv, <stem>.area.csv and a JSON sidecar
// <stem>.json carrying alpha / geometric flag / tolerances.
void save_rough_path(const RoughPathGrid& rp, const std::string& stem);
RoughPathGrid load_rough_path(const std::string& stem);

// Controlled path: <stem>.csv holds t plus flattened values then flattened
// gubinelli entries (row-major); <stem>.json records d, width and m.
void save_controlled(const ControlledGridPath& y, const GridPath& grid, int m,
                     const std::string& stem);
ControlledGridPath load_controlled(const std::string& stem);

void save_json(const std::string& json_text, const std::string& file);
std::string load_text(const std::string& file);

}  // namespace roughkit
