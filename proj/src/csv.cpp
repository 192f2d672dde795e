#include "invex/csv.hpp"

#include <cstdio>
#include <fstream>

namespace invex {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void append_trace_rows(std::string& out, double lambda, const IterationTrace& trace) {
    const std::string lam = format_g17(lambda);
    for (const TraceRecord& r : trace.records) {
        out += lam;
        out += ',';
        out += std::to_string(r.t);
        out += ',';
        out += format_g17(r.fhat);
        out += ',';
        out += format_g17(r.f);
        out += ',';
        out += format_g17(r.grad_norm);
        out += ',';
        out += format_g17(r.pl_ratio);
        out += ',';
        out += format_g17(r.g_norm);
        out += ',';
        out += format_g17(r.step_len);
        out += ',';
        out += format_g17(r.path_len);
        out += '\n';
    }
}

std::string trace_csv(double lambda, const IterationTrace& trace) {
    std::string out = kTraceCsvHeader;
    out += '\n';
    append_trace_rows(out, lambda, trace);
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw ConfigError("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace invex
