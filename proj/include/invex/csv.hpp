#pragma once

#include <filesystem>
#include <string>

#include "invex/optimizers.hpp"

namespace invex {

// 17 significant digits: parses back to the identical double.
std::string format_g17(double x);

// Stable schema shared by every per-run trace file.
inline constexpr const char* kTraceCsvHeader =
    "lambda,t,fhat,f,grad_norm,pl_ratio,g_norm,step_len,path_len";

std::string trace_csv(double lambda, const IterationTrace& trace);  // header + rows
void append_trace_rows(std::string& out, double lambda, const IterationTrace& trace);

// Writes via a temp file and rename, so readers never observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace invex
