#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace numcli {

enum class IoErrorKind { MalformedCsv, MalformedPgm, NonFinite };

class IoError : public std::runtime_error {
 public:
  IoError(IoErrorKind kind, const std::string& what);
  IoErrorKind kind() const noexcept { return kind_; }

 private:
  IoErrorKind kind_;
};

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;
};

/// Comma separated, header row first, 17 significant digits, '\n' line ends.
std::string write_csv(const Table& t);
/// Inverse of write_csv. Rejects ragged rows, empty fields and non-finite values.
Table read_csv(std::string_view text);

struct Gray {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major
};

/// ASCII P2 with maxval 255. Values must already lie in [0, 255]; they are rounded.
std::string write_pgm(const Gray& img);
/// Reads P2 only; comments after '#' are skipped. Values are returned unscaled.
Gray read_pgm(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace numcli
