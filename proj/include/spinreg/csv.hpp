// csv.hpp — locale-independent CSV assembly with '#'-prefixed metadata.

#pragma once

#include <charconv>
#include <span>
#include <string>
#include <vector>

namespace spinreg {

// 12 significant digits, shortest general form, independent of any locale.
inline std::string format_number(double value) {
    char buf[40];
    auto [end, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    (void)ec;
    return std::string(buf, end);
}

class CsvBuilder {
  public:
    void comment(const std::string& line) {
        out_ += "# ";
        out_ += line;
        out_ += '\n';
    }

    void columns(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out_ += ',';
            out_ += names[i];
        }
        out_ += '\n';
    }

    void row(std::span<const double> values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ += ',';
            out_ += format_number(values[i]);
        }
        out_ += '\n';
    }

    void blank() { out_ += '\n'; }

    const std::string& str() const { return out_; }

  private:
    std::string out_;
};

}  // namespace spinreg
