#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tseek/evaluation.hpp"
#include "tseek/instances.hpp"
#include "tseek/strategy1d.hpp"
#include "tseek/strategy25d.hpp"

namespace tseek {

// Shortest decimal string that reads back to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

// 1.5D terrain: header "x,height", one vertex per line.
void write_terrain1d_csv(std::ostream& out, const Terrain1D& terrain);
Terrain1D read_terrain1d_csv(std::istream& in);

// 2.5D raster: CSV matrix (row r on line r) plus a JSON manifest holding
// cols, rows, spacing, origin and the CSV file name.
void write_raster_csv(std::ostream& out, const Terrain25D& terrain);
void save_raster(const std::string& manifest_path, const std::string& csv_path, const Terrain25D& terrain);
Terrain25D load_raster(const std::string& manifest_path);

// Path exports: "arclen,x,y,event" and "arclen,x,y,z,event". Several events
// on one vertex are joined with '+'.
void write_path1d_csv(std::ostream& out, const SearchPath1D& path);
void write_path25d_csv(std::ostream& out, const SearchPath3D& path);

// "instance_id,tau,tau_star,opt,ratio,ratio_star,flags"
void write_results_csv(std::ostream& out, const std::vector<RatioReport>& reports);
void write_sweep_csv(std::ostream& out, const SweepTable& table);

// Instance manifests (JSON) next to their terrain files.
void save_instance(const std::string& dir, const Instance1D& inst);
void save_instance(const std::string& dir, const Instance25D& inst);
Instance1D load_instance1d(const std::string& manifest_path);
Instance25D load_instance25d(const std::string& manifest_path);
// "1d" or "2.5d", from the manifest's "dimension" field.
std::string manifest_dimension(const std::string& manifest_path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tseek
