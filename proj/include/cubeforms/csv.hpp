// Minimal CSV reading/writing for cochains, points and report tables.

#ifndef CUBEFORMS_CSV_HPP
#define CUBEFORMS_CSV_HPP

#include <cubeforms/interp.hpp>

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubeforms
{

  class CsvError : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  /// 17 significant digits, enough to round-trip any double
  std::string format_double(double value);

  /// Rows of numbers. A first line that does not parse as numbers is taken as a header.
  /// Errors name the source and line number.
  std::vector<std::vector<double>> read_numeric_rows(std::istream& in, const std::string& source,
                                                     std::size_t expected_columns);
  std::vector<std::vector<double>> read_numeric_file(const std::filesystem::path& path, std::size_t expected_columns);

  /// "id,value" rows; every global id of degree p must appear exactly once
  Cochain read_cochain_csv(const std::filesystem::path& path, const std::shared_ptr<const RefinedMesh>& mesh, int p);
  std::string cochain_to_csv(const Cochain& cochain);

} // namespace cubeforms

#endif
