// Parses a 48000-row population file while counting live heap bytes. Global
// operator new/delete are replaced so the count covers every allocation.
#include <gtest/gtest.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <new>

#include "microlab/dataset/csv.hpp"

namespace {

std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};

void* counted_alloc(std::size_t size) {
  // Prefix each block with its size so delete can subtract it.
  auto* block = static_cast<std::size_t*>(std::malloc(size + sizeof(std::max_align_t)));
  if (!block) throw std::bad_alloc();
  *block = size;
  const std::size_t live = g_live.fetch_add(size) + size;
  std::size_t peak = g_peak.load();
  while (live > peak && !g_peak.compare_exchange_weak(peak, live)) {
  }
  return reinterpret_cast<char*>(block) + sizeof(std::max_align_t);
}

void counted_free(void* p) noexcept {
  if (!p) return;
  auto* block = reinterpret_cast<std::size_t*>(static_cast<char*>(p) - sizeof(std::max_align_t));
  g_live.fetch_sub(*block);
  std::free(block);
}

}  // namespace

void* operator new(std::size_t size) { return counted_alloc(size); }
void* operator new[](std::size_t size) { return counted_alloc(size); }
void operator delete(void* p) noexcept { counted_free(p); }
void operator delete[](void* p) noexcept { counted_free(p); }
void operator delete(void* p, std::size_t) noexcept { counted_free(p); }
void operator delete[](void* p, std::size_t) noexcept { counted_free(p); }

namespace {

constexpr std::size_t kRows = 48000;
constexpr std::size_t kBudget = 64 * 1024;

std::filesystem::path write_rows(std::size_t rows) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("microlab_stream_" + std::to_string(rows) + ".csv");
  std::ofstream out(path, std::ios::binary);
  std::string line;
  for (std::size_t i = 0; i < rows; ++i) {
    microlab::PopulationRecord r;
    r.time = static_cast<long long>(i / 1000 + 1);
    r.x = static_cast<int>(i % 100) + 1;
    r.y = static_cast<int>((i / 100) % 100) + 1;
    r.biomass = 1000.0 + static_cast<double>(i) / 7.0;
    r.genotype = static_cast<int>(i % 8) + 1;
    r.phenotype = 1;
    r.name = "Bifidobacterium_longum_NCC2705";
    for (std::size_t k = 0; k < microlab::kFluxColumns; ++k) r.fluxes[k] = -1.0 / (k + 3.0);
    line.clear();
    microlab::append_population_row(line, r);
    out << line;
  }
  return path;
}

// Peak extra heap while streaming through `rows` records.
std::size_t streaming_peak(const std::filesystem::path& path, std::size_t& count) {
  std::ifstream in(path, std::ios::binary);
  microlab::PopulationReader reader(in, path.string());
  microlab::PopulationRecord record;
  const std::size_t base = g_live.load();
  g_peak.store(base);
  count = 0;
  while (reader.next(record)) ++count;
  return g_peak.load() - base;
}

}  // namespace

TEST(StreamingParse, MemoryIndependentOfFileLength) {
  const auto big = write_rows(kRows);
  const auto small = write_rows(100);
  std::size_t big_count = 0;
  std::size_t small_count = 0;
  const std::size_t big_peak = streaming_peak(big, big_count);
  const std::size_t small_peak = streaming_peak(small, small_count);
  EXPECT_EQ(big_count, kRows);
  EXPECT_EQ(small_count, 100u);
  EXPECT_LE(big_peak, kBudget);
  EXPECT_EQ(big_peak, small_peak);
  std::printf("peak streaming heap: %zu bytes for %zu rows, %zu bytes for 100 rows\n", big_peak,
              kRows, small_peak);
  std::filesystem::remove(big);
  std::filesystem::remove(small);
}
