#include "lmlab/table_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

#include "lmlab/util.hpp"

namespace lmlab {

namespace {

constexpr const char* kMagic = "lmlab-table";
constexpr const char* kVersion = "v1";

std::string header_payload(const CoefficientTable& t) {
    return std::string(kVersion) + "|" + std::to_string(t.degree) + "|" +
           std::to_string(t.n_max) + "|" + CoefficientTable::kind_name(t.kind) + "|" +
           t.source + "|" + t.params;
}

CoefficientTable::Kind kind_from_name(const std::string& name) {
    using K = CoefficientTable::Kind;
    for (K k : {K::standard, K::rankin_selberg, K::boxplus, K::tau_d, K::synthetic})
        if (name == CoefficientTable::kind_name(k)) return k;
    throw std::runtime_error("load_table: unknown kind '" + name + "'");
}

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string read_line(std::FILE* f, const char* what) {
    std::string line;
    int c;
    while ((c = std::fgetc(f)) != EOF && c != '\n') line += static_cast<char>(c);
    if (c == EOF && line.empty())
        throw std::runtime_error(std::string("load_table: truncated file (missing ") + what + ")");
    return line;
}

std::string field_after(const std::string& line, const std::string& key) {
    if (line.rfind(key + " ", 0) != 0)
        throw std::runtime_error("load_table: malformed header line '" + line + "'");
    return line.substr(key.size() + 1);
}

}  // namespace

uint64_t table_header_hash(const CoefficientTable& table) {
    return fnv1a64(header_payload(table));
}

void save_table(const CoefficientTable& table, const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("save_table: cannot open " + path);
    std::fprintf(f.get(), "%s %s\n", kMagic, kVersion);
    std::fprintf(f.get(), "degree %d\n", table.degree);
    std::fprintf(f.get(), "N %" PRId64 "\n", table.n_max);
    std::fprintf(f.get(), "kind %s\n", CoefficientTable::kind_name(table.kind));
    std::fprintf(f.get(), "source %s\n", table.source.c_str());
    std::fprintf(f.get(), "params %s\n", table.params.c_str());
    std::fprintf(f.get(), "hash %s\n", hex64(table_header_hash(table)).c_str());
    for (int64_t n = 1; n <= table.n_max; ++n) {
        const cplx& v = table.values[static_cast<size_t>(n)];
        std::fprintf(f.get(), "%" PRId64 " %.16e %.16e\n", n, v.real(), v.imag());
    }
}

CoefficientTable load_table(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("load_table: cannot open " + path);

    std::string magic_line = read_line(f.get(), "magic");
    if (magic_line != std::string(kMagic) + " " + kVersion)
        throw std::runtime_error("load_table: version mismatch ('" + magic_line + "')");

    CoefficientTable t;
    t.degree = std::stoi(field_after(read_line(f.get(), "degree"), "degree"));
    t.n_max = std::stoll(field_after(read_line(f.get(), "N"), "N"));
    t.kind = kind_from_name(field_after(read_line(f.get(), "kind"), "kind"));
    t.source = field_after(read_line(f.get(), "source"), "source");
    t.params = field_after(read_line(f.get(), "params"), "params");
    std::string stored_hash = field_after(read_line(f.get(), "hash"), "hash");
    if (stored_hash != hex64(table_header_hash(t)))
        throw std::runtime_error("load_table: header hash mismatch (stale or edited cache)");
    if (t.n_max < 1) throw std::runtime_error("load_table: bad N");

    t.values.assign(static_cast<size_t>(t.n_max) + 1, cplx(0.0, 0.0));
    for (int64_t n = 1; n <= t.n_max; ++n) {
        int64_t idx;
        double re, im;
        if (std::fscanf(f.get(), "%" SCNd64 " %lf %lf", &idx, &re, &im) != 3)
            throw std::runtime_error("load_table: corrupted row " + std::to_string(n) +
                                     " (parse failure)");
        if (idx != n)
            throw std::runtime_error("load_table: corrupted row " + std::to_string(n) +
                                     " (index reads " + std::to_string(idx) + ")");
        t.values[static_cast<size_t>(n)] = cplx(re, im);
    }
    return t;
}

}  // namespace lmlab
