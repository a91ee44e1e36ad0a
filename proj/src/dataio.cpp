#include "rproj/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

namespace rproj {

ParseError::ParseError(const std::string& path, std::size_t line, const std::string& message)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + message), line_(line)
{
}

namespace {

std::uint64_t fnv1a(std::istream& in)
{
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 16];
    while (in) {
        in.read(buffer, sizeof buffer);
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    return hash;
}

std::vector<std::string> split_whitespace(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string token; is >> token;) {
        out.push_back(token);
    }
    return out;
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool parse_double(std::string_view text, double& out)
{
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_index(std::string_view text, long long& out)
{
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

/// Line reader that tracks 1-based line numbers and skips '%' comments.
class MmLines {
public:
    MmLines(std::istream& in, const std::string& name) : in_(in), name_(name) {}

    bool next_data(std::vector<std::string>& tokens)
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty() && line.front() == '%') {
                continue;
            }
            tokens = split_whitespace(line);
            if (!tokens.empty()) {
                return true;
            }
        }
        return false;
    }

    bool raw(std::string& line)
    {
        if (!std::getline(in_, line)) {
            return false;
        }
        ++line_;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return true;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(name_, line_, message); }

    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::string name_;
    std::size_t line_ = 0;
};

enum class Symmetry { general, symmetric, skew };

struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    double value;
};

}  // namespace

Eigen::SparseVector<double> SparseDataset::column(Eigen::Index j) const
{
    return matrix.col(j);
}

std::vector<Eigen::SparseVector<double>> SparseDataset::columns() const
{
    std::vector<Eigen::SparseVector<double>> out;
    out.reserve(static_cast<std::size_t>(cols()));
    for (Eigen::Index j = 0; j < cols(); ++j) {
        out.push_back(column(j));
    }
    return out;
}

SparseDataset read_matrix_market(std::istream& in, const std::string& name)
{
    MmLines lines(in, name);
    std::string banner;
    if (!lines.raw(banner)) {
        lines.fail("empty file");
    }
    const auto head = split_whitespace(banner);
    if (head.size() != 5 || head[0] != "%%MatrixMarket") {
        lines.fail("malformed banner, expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
    }
    if (lower(head[1]) != "matrix") {
        lines.fail("unsupported object '" + head[1] + "'");
    }
    const std::string format = lower(head[2]);
    const std::string field = lower(head[3]);
    const std::string symmetry_name = lower(head[4]);
    if (format != "coordinate" && format != "array") {
        lines.fail("unknown format '" + head[2] + "'");
    }
    if (field == "complex" || field == "integer") {
        lines.fail("unsupported field '" + head[3] + "' (only real and pattern are accepted)");
    }
    if (field != "real" && field != "double" && field != "pattern") {
        lines.fail("unknown field '" + head[3] + "'");
    }
    const bool pattern = field == "pattern";
    if (pattern && format == "array") {
        lines.fail("pattern field requires coordinate format");
    }
    Symmetry symmetry = Symmetry::general;
    if (symmetry_name == "symmetric") {
        symmetry = Symmetry::symmetric;
    } else if (symmetry_name == "skew-symmetric") {
        symmetry = Symmetry::skew;
    } else if (symmetry_name != "general") {
        lines.fail("unsupported symmetry '" + head[4] + "'");
    }

    std::vector<std::string> tokens;
    if (!lines.next_data(tokens)) {
        lines.fail("missing size line");
    }
    const std::size_t size_fields = format == "coordinate" ? 3 : 2;
    long long dims[3] = {0, 0, 0};
    if (tokens.size() != size_fields) {
        lines.fail("size line must have " + std::to_string(size_fields) + " fields");
    }
    for (std::size_t i = 0; i < size_fields; ++i) {
        if (!parse_index(tokens[i], dims[i]) || dims[i] < 0) {
            lines.fail("non-numeric or negative size '" + tokens[i] + "'");
        }
    }
    const auto rows = static_cast<Eigen::Index>(dims[0]);
    const auto cols = static_cast<Eigen::Index>(dims[1]);
    if (symmetry != Symmetry::general && rows != cols) {
        lines.fail("symmetric storage requires a square matrix");
    }

    std::vector<Entry> entries;
    auto add = [&](Eigen::Index i, Eigen::Index j, double v) {
        entries.push_back({i, j, v});
        if (i != j && symmetry != Symmetry::general) {
            entries.push_back({j, i, symmetry == Symmetry::skew ? -v : v});
        }
    };

    if (format == "coordinate") {
        const long long expected = dims[2];
        const std::size_t fields = pattern ? 2 : 3;
        for (long long k = 0; k < expected; ++k) {
            if (!lines.next_data(tokens)) {
                lines.fail("expected " + std::to_string(expected) + " entries, found " +
                           std::to_string(k));
            }
            if (tokens.size() != fields) {
                lines.fail("entry must have " + std::to_string(fields) + " fields");
            }
            long long i = 0;
            long long j = 0;
            if (!parse_index(tokens[0], i) || !parse_index(tokens[1], j)) {
                lines.fail("non-numeric coordinate");
            }
            if (i < 1 || i > dims[0] || j < 1 || j > dims[1]) {
                lines.fail("coordinate (" + tokens[0] + ", " + tokens[1] + ") out of range");
            }
            if (symmetry != Symmetry::general && i < j) {
                lines.fail("symmetric storage expects the lower triangle");
            }
            double v = 1.0;
            if (!pattern && !parse_double(tokens[2], v)) {
                lines.fail("non-numeric value '" + tokens[2] + "'");
            }
            add(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1), v);
        }
    } else {
        for (Eigen::Index j = 0; j < cols; ++j) {
            const Eigen::Index first =
                symmetry == Symmetry::general ? 0 : (symmetry == Symmetry::skew ? j + 1 : j);
            for (Eigen::Index i = first; i < rows; ++i) {
                if (!lines.next_data(tokens)) {
                    lines.fail("array data ended early");
                }
                double v = 0.0;
                if (tokens.size() != 1 || !parse_double(tokens[0], v)) {
                    lines.fail("array entries must be one numeric value per line");
                }
                add(i, j, v);
            }
        }
    }
    if (lines.next_data(tokens)) {
        lines.fail("unexpected data after the declared entries");
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.col, a.row) < std::tie(b.col, b.row);
    });
    SparseDataset out;
    out.name = name;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size();) {
        double sum = entries[k].value;
        std::size_t next = k + 1;
        while (next < entries.size() && entries[next].row == entries[k].row &&
               entries[next].col == entries[k].col) {
            sum += entries[next].value;
            ++next;
            ++out.merged_duplicates;
        }
        if (sum == 0.0) {
            ++out.dropped_zeros;
        } else {
            triplets.emplace_back(entries[k].row, entries[k].col, sum);
        }
        k = next;
    }
    out.matrix.resize(rows, cols);
    out.matrix.setFromTriplets(triplets.begin(), triplets.end());
    out.matrix.makeCompressed();
    return out;
}

SparseDataset read_matrix_market(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    auto out = read_matrix_market(in, path.string());
    out.name = path.stem().string();
    out.source = path;
    std::ifstream raw(path, std::ios::binary);
    out.checksum = fnv1a(raw);
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line, const std::string& name,
                                   std::size_t line_no)
{
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    if (quoted) {
        throw ParseError(name, line_no, "unterminated quoted cell");
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

}  // namespace

std::vector<Eigen::VectorXd> read_csv_vectors(std::istream& in, bool has_header, bool by_rows,
                                              const std::string& name)
{
    std::vector<std::vector<double>> rows;
    std::size_t width = 0;
    bool header_pending = has_header;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty() || line.front() == '#') {
            continue;
        }
        const auto cells = split_csv(line, name, line_no);
        if (header_pending) {
            header_pending = false;
            width = cells.size();
            continue;
        }
        if (width == 0) {
            width = cells.size();
        }
        if (cells.size() != width) {
            throw ParseError(name, line_no,
                             "ragged row: expected " + std::to_string(width) + " cells, found " +
                                 std::to_string(cells.size()));
        }
        std::vector<double> values(width);
        for (std::size_t c = 0; c < width; ++c) {
            if (!parse_double(trim(cells[c]), values[c])) {
                throw ParseError(name, line_no,
                                 "non-numeric cell '" + cells[c] + "' in column " +
                                     std::to_string(c + 1));
            }
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty()) {
        throw ParseError(name, 0, "empty file");
    }
    std::vector<Eigen::VectorXd> out;
    if (by_rows) {
        for (const auto& r : rows) {
            out.push_back(Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size())));
        }
        return out;
    }
    out.assign(width, Eigen::VectorXd(static_cast<Eigen::Index>(rows.size())));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            out[c](static_cast<Eigen::Index>(r)) = rows[r][c];
        }
    }
    return out;
}

std::vector<Eigen::VectorXd> read_csv_vectors(const std::filesystem::path& path,
                                              bool has_header, bool by_rows)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return read_csv_vectors(in, has_header, by_rows, path.string());
}

ColumnStats column_stats(const Eigen::SparseVector<double>& x, std::size_t column)
{
    ColumnStats s;
    s.column = column;
    double sum2 = 0.0;
    double sum4 = 0.0;
    for (Eigen::SparseVector<double>::InnerIterator it(x); it; ++it) {
        if (it.value() == 0.0) {
            continue;
        }
        const double sq = it.value() * it.value();
        ++s.sparsity;
        sum2 += sq;
        sum4 += sq * sq;
    }
    s.norm = std::sqrt(sum2);
    s.flatness = s.sparsity == 0 ? 0.0 : sum2 * sum2 / (static_cast<double>(s.sparsity) * sum4);
    return s;
}

std::vector<ColumnStats> sparsity_stats(const SparseDataset& dataset)
{
    std::vector<ColumnStats> out;
    out.reserve(static_cast<std::size_t>(dataset.cols()));
    for (Eigen::Index j = 0; j < dataset.cols(); ++j) {
        out.push_back(column_stats(dataset.column(j), static_cast<std::size_t>(j)));
    }
    return out;
}

std::string format_double(double value)
{
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

namespace {

std::string quote_cell(const std::string& cell)
{
    if (cell.find_first_of(",\"\n\r") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(const std::vector<std::string>& cells, std::ostream& out)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << quote_cell(cells[i]);
    }
    out << '\n';
}

}  // namespace

void write_csv(const CsvTable& table, std::ostream& out)
{
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("row width does not match header");
        }
    }
    for (const auto& comment : table.comments) {
        out << "# " << comment << '\n';
    }
    write_row(table.header, out);
    for (const auto& row : table.rows) {
        write_row(row, out);
    }
    if (!out) {
        throw IoError("write failed");
    }
}

void write_csv(const CsvTable& table, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_csv(table, out);
    out.flush();
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

}  // namespace rproj
