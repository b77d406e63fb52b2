#include "chaoscrack/pgm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace chaoscrack {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const char> data) : data_(data) {}

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char ch = data_[pos_];
      if (ch == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t read_number(const char* what) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(data_[pos_] - '0');
      if (value > (1u << 30)) throw FormatError(std::string("PGM ") + what + " too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw FormatError(std::string("PGM header: expected ") + what);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t size() const { return data_.size(); }

 private:
  std::span<const char> data_;
  std::size_t pos_ = 0;
};

}  // namespace

Image load_pgm(std::span<const char> data) {
  if (data.size() < 2 || data[0] != 'P' || data[1] != '5') {
    throw FormatError("not a binary PGM (expected magic P5)");
  }
  HeaderReader reader(data);
  reader.advance(2);
  const std::size_t width = reader.read_number("width");
  const std::size_t height = reader.read_number("height");
  const std::size_t maxval = reader.read_number("maxval");
  if (width == 0 || height == 0) throw FormatError("PGM dimensions must be positive");
  if (maxval != 255) throw FormatError("unsupported PGM maxval " + std::to_string(maxval));
  // Exactly one whitespace byte separates the header from the raster.
  if (reader.pos() >= reader.size() ||
      !std::isspace(static_cast<unsigned char>(data[reader.pos()]))) {
    throw FormatError("PGM header not terminated by whitespace");
  }
  reader.advance(1);
  const std::size_t need = width * height;
  if (reader.size() - reader.pos() < need) {
    throw FormatError("truncated PGM payload: need " + std::to_string(need) + " bytes, have " +
                      std::to_string(reader.size() - reader.pos()));
  }
  Bytes pixels(need);
  for (std::size_t i = 0; i < need; ++i) {
    pixels[i] = static_cast<Byte>(data[reader.pos() + i]);
  }
  return Image(width, height, std::move(pixels));
}

Image load_pgm(const std::string& data) { return load_pgm(std::span<const char>(data)); }

std::string save_pgm(const Image& image) {
  std::ostringstream out;
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::string text = out.str();
  text.append(reinterpret_cast<const char*>(image.bytes().data()), image.size());
  return text;
}

Image read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_pgm(data);
}

void write_pgm_file(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  const std::string data = save_pgm(image);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace chaoscrack
