#include "minnorm/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "minnorm/errors.hpp"

namespace minnorm {

namespace {

constexpr const char* kHeader = "%%MatrixMarket matrix array complex general";

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct LineReader {
    std::ifstream in;
    std::string text;
    std::size_t number = 0; // 1-based line just read

    bool next() {
        if (!std::getline(in, text)) return false;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        ++number;
        return true;
    }
};

bool blank(const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
}

// Parse exactly `count` doubles from a line; reports the 1-based column of
// the first offending character.
void parse_doubles(const std::string& line, std::size_t lineno, double* out, std::size_t count) {
    const char* p = line.data();
    const char* end = p + line.size();
    for (std::size_t k = 0; k < count; ++k) {
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        if (p == end)
            throw ParseError("expected " + std::to_string(count) + " numeric fields", lineno,
                             static_cast<std::size_t>(p - line.data()) + 1);
        const auto [next, ec] = std::from_chars(p, end, out[k]);
        if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t'))
            throw ParseError("malformed number", lineno,
                             static_cast<std::size_t>(p - line.data()) + 1);
        p = next;
    }
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p != end)
        throw ParseError("trailing characters after " + std::to_string(count) + " fields", lineno,
                         static_cast<std::size_t>(p - line.data()) + 1);
}

} // namespace

CMatrix read_matrix_market(const std::string& path) {
    LineReader reader;
    reader.in.open(path);
    if (!reader.in) throw ParseError("cannot open '" + path + "' for reading");

    if (!reader.next()) throw ParseError("empty file", 1, 1);
    if (lower(reader.text) != lower(kHeader))
        throw ParseError(std::string("unsupported header; expected \"") + kHeader + "\"", 1, 1);

    // Comments, then the size line.
    for (;;) {
        if (!reader.next()) throw ParseError("missing size line", reader.number + 1, 1);
        if (!reader.text.empty() && reader.text[0] == '%') continue;
        if (blank(reader.text)) continue;
        break;
    }
    double dims[2];
    parse_doubles(reader.text, reader.number, dims, 2);
    if (dims[0] < 1 || dims[1] < 1 || dims[0] != std::floor(dims[0]) ||
        dims[1] != std::floor(dims[1]))
        throw ParseError("size line must hold two positive integers", reader.number, 1);
    const auto rows = static_cast<Index>(dims[0]);
    const auto cols = static_cast<Index>(dims[1]);

    CMatrix A(rows, cols);
    // Column-major entries, one "real imag" pair per line.
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            do {
                if (!reader.next())
                    throw ParseError("file ends before entry " + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1),
                                     reader.number + 1, 1);
            } while ((!reader.text.empty() && reader.text[0] == '%') || blank(reader.text));
            double re_im[2];
            parse_doubles(reader.text, reader.number, re_im, 2);
            A(i, j) = Complex(re_im[0], re_im[1]);
        }
    }
    return A;
}

CVector read_vector_market(const std::string& path) {
    const CMatrix A = read_matrix_market(path);
    if (A.cols() != 1)
        throw DimensionError("'" + path + "' holds a " + std::to_string(A.rows()) + "x" +
                             std::to_string(A.cols()) + " matrix where a vector was expected");
    return A.col(0);
}

void write_matrix_market(const std::string& path, const CMatrix& A) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << kHeader << "\n" << A.rows() << " " << A.cols() << "\n";
    char line[96];
    for (Index j = 0; j < A.cols(); ++j)
        for (Index i = 0; i < A.rows(); ++i) {
            std::snprintf(line, sizeof(line), "%.17g %.17g\n", A(i, j).real(), A(i, j).imag());
            out << line;
        }
    if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

void write_matrix_market(const std::string& path, const CVector& v) {
    write_matrix_market(path, CMatrix(v));
}

} // namespace minnorm
