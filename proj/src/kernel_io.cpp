/*
 * Copyright 2026 the qkad authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qkad/kernel_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace qkad {

namespace {

static_assert(std::endian::native == std::endian::little,
              "QKM1 writer assumes a little-endian host");

constexpr char kMagic[4] = {'Q', 'K', 'M', '1'};

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

void save_kernel(const std::string& path, const KernelMatrix& k) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out.write(kMagic, 4);
  write_u32(out, static_cast<std::uint32_t>(k.rows()));
  write_u32(out, static_cast<std::uint32_t>(k.cols()));
  write_u32(out, 0);
  out.write(reinterpret_cast<const char*>(k.values.data.data()),
            static_cast<std::streamsize>(k.values.data.size() * sizeof(double)));

  nlohmann::json meta{
      {"method", method_name(k.method)},
      {"seed", k.meta.seed},
      {"shots", k.meta.shots},
      {"settings", k.meta.settings},
      {"gamma", k.meta.gamma},
      {"entry_evaluations", k.entry_evaluations},
      {"simulated_shots", k.simulated_shots},
  };
  out << meta.dump();
  if (!out) throw DataError("failed writing kernel matrix: " + path);
}

KernelMatrix load_kernel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open kernel matrix: " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw DataError("not a QKM1 kernel file: " + path);
  }
  const std::uint32_t rows = read_u32(in);
  const std::uint32_t cols = read_u32(in);
  read_u32(in);  // reserved
  KernelMatrix k;
  k.values = Matrix(rows, cols);
  in.read(reinterpret_cast<char*>(k.values.data.data()),
          static_cast<std::streamsize>(k.values.data.size() * sizeof(double)));
  if (!in) throw DataError("truncated kernel file: " + path);

  std::stringstream trailer;
  trailer << in.rdbuf();
  try {
    const auto meta = nlohmann::json::parse(trailer.str());
    k.method = method_from_name(meta.at("method").get<std::string>());
    k.meta.seed = meta.value("seed", std::uint64_t{0});
    k.meta.shots = meta.value("shots", std::int64_t{0});
    k.meta.settings = meta.value("settings", 0);
    k.meta.gamma = meta.value("gamma", 0.0);
    k.entry_evaluations = meta.value("entry_evaluations", std::uint64_t{0});
    k.simulated_shots = meta.value("simulated_shots", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw DataError("bad kernel metadata trailer in " + path + ": " + e.what());
  }
  return k;
}

void export_kernel_csv(const std::string& path, const KernelMatrix& k) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << std::setprecision(17);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      if (j) out << ',';
      out << k.at(i, j);
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing CSV: " + path);
}

}  // namespace qkad
