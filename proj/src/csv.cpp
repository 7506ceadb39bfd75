#include <cubeforms/csv.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cubeforms
{

  std::string format_double(double value)
  {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
  }

  namespace
  {
    bool parse_row(const std::string& line, std::vector<double>& row)
    {
      row.clear();
      std::stringstream fields(line);
      std::string field;
      while (std::getline(fields, field, ',')) {
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        if (first == std::string::npos) {
          return false;
        }
        const std::string trimmed = field.substr(first, last - first + 1);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
        if (ec != std::errc() || ptr != trimmed.data() + trimmed.size()) {
          return false;
        }
        row.push_back(value);
      }
      return !row.empty();
    }
  } // namespace

  std::vector<std::vector<double>> read_numeric_rows(std::istream& in, const std::string& source,
                                                     std::size_t expected_columns)
  {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_number = 0;
    std::vector<double> row;
    while (std::getline(in, line)) {
      ++line_number;
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      if (!parse_row(line, row)) {
        if (line_number == 1) {
          continue;
        }
        throw CsvError(source + ":" + std::to_string(line_number) + ": cannot parse numbers from '" + line + "'");
      }
      if (expected_columns != 0 && row.size() != expected_columns) {
        throw CsvError(source + ":" + std::to_string(line_number) + ": expected " + std::to_string(expected_columns) +
                       " columns, found " + std::to_string(row.size()));
      }
      rows.push_back(row);
    }
    return rows;
  }

  std::vector<std::vector<double>> read_numeric_file(const std::filesystem::path& path, std::size_t expected_columns)
  {
    std::ifstream in(path);
    if (!in) {
      throw CsvError("cannot open " + path.string());
    }
    return read_numeric_rows(in, path.string(), expected_columns);
  }

  Cochain read_cochain_csv(const std::filesystem::path& path, const std::shared_ptr<const RefinedMesh>& mesh, int p)
  {
    std::ifstream in(path);
    if (!in) {
      throw CsvError("cannot open " + path.string());
    }
    const auto rows = read_numeric_rows(in, path.string(), 2);
    const auto expected = mesh->count(p);
    std::vector<double> values(expected, 0.0);
    std::vector<bool> seen(expected, false);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double id = rows[r][0];
      if (id < 0 || id != std::floor(id) || id >= static_cast<double>(expected)) {
        throw CsvError(path.string() + ": row " + std::to_string(r + 1) + ": id " + format_double(id) +
                       " is not a valid " + std::to_string(p) + "-cube id (0.." + std::to_string(expected - 1) + ")");
      }
      const auto index = static_cast<std::size_t>(id);
      if (seen[index]) {
        throw CsvError(path.string() + ": row " + std::to_string(r + 1) + ": duplicate id " + std::to_string(index));
      }
      seen[index] = true;
      values[index] = rows[r][1];
    }
    if (rows.size() != expected) {
      throw CsvError(path.string() + ": expected " + std::to_string(expected) + " values for degree " +
                     std::to_string(p) + ", found " + std::to_string(rows.size()));
    }
    return Cochain(mesh, p, std::move(values));
  }

  std::string cochain_to_csv(const Cochain& cochain)
  {
    std::string out = "id,value\n";
    for (std::size_t i = 0; i < cochain.values.size(); ++i) {
      out += std::to_string(i) + "," + format_double(cochain.values[i]) + "\n";
    }
    return out;
  }

} // namespace cubeforms
