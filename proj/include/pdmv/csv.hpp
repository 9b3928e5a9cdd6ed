#pragma once

#include <fstream>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmv {

// Minimal column-oriented CSV writer with round-trip numeric precision.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open '" + path + "'");
        out_.precision(std::numeric_limits<double>::max_digits10);
    }

    void header(std::initializer_list<std::string> names) {
        bool first = true;
        for (const auto& n : names) {
            if (!first) out_ << ',';
            out_ << n;
            first = false;
        }
        out_ << '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) out_ << ',';
            out_ << v;
            first = false;
        }
        out_ << '\n';
    }

    // columns[c][r]; all columns must share a length
    void columns(std::initializer_list<std::string> names,
                 std::span<const std::vector<double>* const> cols) {
        header(names);
        if (cols.empty()) return;
        const std::size_t n = cols.front()->size();
        for (const auto* c : cols)
            if (c->size() != n) throw std::invalid_argument("CsvWriter: ragged columns");
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                if (c) out_ << ',';
                out_ << (*cols[c])[r];
            }
            out_ << '\n';
        }
    }

private:
    std::ofstream out_;
};

}  // namespace pdmv
