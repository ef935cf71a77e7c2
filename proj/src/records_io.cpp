#include "bures/records_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bures/error.hpp"

namespace bures {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

double parse_real(const std::string& text, const std::string& column) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw InvalidInputError("column '" + column + "' holds non-numeric value '" + text + "'");
    }
    return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

bool looks_like_jsonl(std::istream& in) {
    char c = 0;
    while (in.get(c)) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            in.unget();
            return c == '{';
        }
    }
    in.clear();
    return false;
}

// Rows keyed by column name, in file order.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // raw text for CSV
    std::vector<ordered_json> objects;           // parsed objects for JSONL
    bool jsonl = false;
};

Table load_table(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    Table table;
    table.jsonl = looks_like_jsonl(in);
    std::string line;
    if (table.jsonl) {
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            try {
                table.objects.push_back(ordered_json::parse(line));
            } catch (const nlohmann::json::parse_error& e) {
                throw InvalidInputError(path.string() + ":" + std::to_string(line_no) +
                                        ": malformed JSON: " + e.what());
            }
            if (!table.objects.back().is_object()) {
                throw InvalidInputError(path.string() + ":" + std::to_string(line_no) +
                                        ": expected a JSON object");
            }
        }
        if (!table.objects.empty()) {
            for (const auto& item : table.objects.front().items()) {
                table.columns.push_back(item.key());
            }
        }
    } else {
        if (!std::getline(in, line)) {
            throw InvalidInputError("'" + path.string() + "' is empty");
        }
        table.columns = split_csv_line(line);
        while (std::getline(in, line)) {
            if (line.empty() || line == "\r") {
                continue;
            }
            auto fields = split_csv_line(line);
            if (fields.size() != table.columns.size()) {
                throw InvalidInputError("'" + path.string() + "': row has " +
                                        std::to_string(fields.size()) + " fields, header has " +
                                        std::to_string(table.columns.size()));
            }
            table.rows.push_back(std::move(fields));
        }
    }
    if (in.bad()) {
        throw IoError("read failure on '" + path.string() + "'");
    }
    return table;
}

std::size_t column_index(const Table& table, const std::string& name) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), name);
    if (it == table.columns.end()) {
        throw InvalidInputError("column '" + name + "' not found");
    }
    return static_cast<std::size_t>(it - table.columns.begin());
}

std::size_t row_count(const Table& t) { return t.jsonl ? t.objects.size() : t.rows.size(); }

double numeric_cell(const Table& t, std::size_t row, const std::string& name, std::size_t col) {
    if (!t.jsonl) {
        return parse_real(t.rows[row][col], name);
    }
    const auto& obj = t.objects[row];
    const auto it = obj.find(name);
    if (it == obj.end()) {
        throw InvalidInputError("record " + std::to_string(row) + " lacks key '" + name + "'");
    }
    if (!it->is_number()) {
        throw InvalidInputError("key '" + name + "' is not numeric");
    }
    return it->get<double>();
}

std::string text_cell(const Table& t, std::size_t row, const std::string& name, std::size_t col) {
    if (!t.jsonl) {
        return t.rows[row][col];
    }
    const auto& obj = t.objects[row];
    const auto it = obj.find(name);
    if (it == obj.end() || !it->is_string()) {
        throw InvalidInputError("record " + std::to_string(row) + " lacks string key '" + name + "'");
    }
    return it->get<std::string>();
}

}  // namespace

RecordFormat parse_record_format(std::string_view text) {
    if (text == "csv") {
        return RecordFormat::csv;
    }
    if (text == "jsonl") {
        return RecordFormat::jsonl;
    }
    throw InvalidInputError("unknown format '" + std::string(text) + "'");
}

RecordFormat format_for_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    return ext == ".jsonl" || ext == ".json" ? RecordFormat::jsonl : RecordFormat::csv;
}

std::string entry_label(std::string_view prefix, std::size_t row, std::size_t col, std::size_t n_levels) {
    std::string label(prefix);
    label += "rho_";
    label += std::to_string(row);
    if (n_levels > 9) {
        label += '_';
    }
    label += std::to_string(col);
    return label;
}

std::vector<std::string> record_columns(std::size_t n_levels) {
    std::vector<std::string> cols{"method", "index"};
    for (const char* prefix : {"re_", "im_"}) {
        for (std::size_t i = 1; i <= n_levels; ++i) {
            for (std::size_t j = 1; j <= n_levels; ++j) {
                cols.push_back(entry_label(prefix, i, j, n_levels));
            }
        }
    }
    for (std::size_t j = 1; j <= n_levels; ++j) {
        cols.push_back(diagonal_label(j, n_levels));
    }
    return cols;
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_records(std::ostream& out, std::span<const SampleRecord> records, RecordFormat format) {
    if (records.empty()) {
        return;
    }
    const std::size_t n = records.front().rho.n_levels();
    const auto columns = record_columns(n);
    if (format == RecordFormat::csv) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << columns[c];
        }
        out << '\n';
    }
    for (const auto& rec : records) {
        if (rec.rho.n_levels() != n) {
            throw ShapeError("write_records: mixed dimensions in one batch");
        }
        std::vector<double> values;
        values.reserve(columns.size() - 2);
        const auto& m = rec.rho.matrix();
        for (const auto& z : m.entries()) {
            values.push_back(z.real());
        }
        for (const auto& z : m.entries()) {
            values.push_back(z.imag());
        }
        for (const auto& o : rec.observables) {
            values.push_back(o.value);
        }
        if (values.size() + 2 != columns.size()) {
            throw ShapeError("write_records: observables do not match the record layout");
        }

        if (format == RecordFormat::csv) {
            out << to_string(rec.method) << ',' << rec.index;
            for (double v : values) {
                out << ',' << format_real(v);
            }
            out << '\n';
        } else {
            ordered_json obj;
            obj["method"] = std::string(to_string(rec.method));
            obj["index"] = rec.index;
            for (std::size_t k = 0; k < values.size(); ++k) {
                obj[columns[k + 2]] = values[k];
            }
            out << obj.dump() << '\n';
        }
    }
}

void write_records(const std::filesystem::path& path, std::span<const SampleRecord> records,
                   RecordFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_records(out, records, format);
    out.flush();
    if (!out) {
        throw IoError("write failure on '" + path.string() + "'");
    }
}

std::vector<SampleRecord> read_records(const std::filesystem::path& path) {
    const Table table = load_table(path);
    const auto n_re = static_cast<std::size_t>(
        std::count_if(table.columns.begin(), table.columns.end(),
                      [](const std::string& c) { return c.rfind("re_rho_", 0) == 0; }));
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n_re))));
    if (n == 0 || n * n != n_re) {
        throw InvalidInputError("'" + path.string() + "' does not hold density-matrix records");
    }

    const auto columns = record_columns(n);
    std::vector<std::size_t> idx;
    for (const auto& c : columns) {
        idx.push_back(table.jsonl ? 0 : column_index(table, c));
    }

    std::vector<SampleRecord> out;
    for (std::size_t r = 0; r < row_count(table); ++r) {
        const SampleMethod method = parse_sample_method(text_cell(table, r, columns[0], idx[0]));
        const double index_value = numeric_cell(table, r, columns[1], idx[1]);
        if (index_value < 0 || index_value != std::floor(index_value)) {
            throw InvalidInputError("record index must be a nonnegative integer");
        }
        std::vector<Complex> entries(n * n);
        for (std::size_t k = 0; k < n * n; ++k) {
            entries[k] = {numeric_cell(table, r, columns[2 + k], idx[2 + k]),
                          numeric_cell(table, r, columns[2 + n * n + k], idx[2 + n * n + k])};
        }
        std::vector<Observable> obs;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t c = 2 + 2 * n * n + j;
            obs.push_back({columns[c], numeric_cell(table, r, columns[c], idx[c])});
        }
        out.push_back({method, static_cast<std::size_t>(index_value),
                       DensityMatrix(ComplexMatrix(n, n, std::move(entries))), std::move(obs)});
    }
    return out;
}

std::vector<double> read_column(const std::filesystem::path& path, const std::string& name) {
    const Table table = load_table(path);
    const std::size_t col = table.jsonl ? 0 : column_index(table, name);
    std::vector<double> values;
    values.reserve(row_count(table));
    for (std::size_t r = 0; r < row_count(table); ++r) {
        values.push_back(numeric_cell(table, r, name, col));
    }
    if (values.empty()) {
        throw InvalidInputError("'" + path.string() + "' has no rows");
    }
    return values;
}

void write_pairs(const std::filesystem::path& path, std::span<const std::pair<double, double>> pairs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << "a,b\n";
    for (const auto& [a, b] : pairs) {
        out << format_real(a) << ',' << format_real(b) << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("write failure on '" + path.string() + "'");
    }
}

}  // namespace bures
