#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "microlab/dataset/csv.hpp"
#include "microlab/dataset/export.hpp"
#include "microlab/dataset/validate.hpp"
#include "support/toy_species.hpp"

using namespace microlab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const std::string kData = MICROLAB_TEST_DATA_DIR;

std::string population_row(long long t, int x, int y, int genotype, const std::string& name) {
  PopulationRecord r;
  r.time = t;
  r.x = x;
  r.y = y;
  r.biomass = 1000.0;
  r.genotype = genotype;
  r.phenotype = 1;
  r.name = name;
  std::string out;
  append_population_row(out, r);
  return out;
}

std::string substance_rows(const std::string& name, long long t, int width, int height,
                           double value = 1.0) {
  std::string out;
  for (int row = 1; row <= height; ++row) {
    SubstanceBlock b{name, t, row, std::vector<double>(static_cast<std::size_t>(width), value), 0};
    append_substance_row(out, b);
  }
  return out;
}

ValidationReport validate_text(const std::string& pop, const std::string& sub) {
  return validate_pair(parse_population(pop), parse_substance(sub));
}

// Trace with two hand-written substances whose totals behave as asked.
SimulationTrace handmade_trace(std::size_t steps, const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& totals) {
  SimulationTrace trace;
  trace.width = 2;
  trace.height = 1;
  trace.species.push_back({1, "Escherichia_coli_K12", "#000000"});
  for (std::size_t s = 0; s < steps; ++s) {
    Snapshot snap;
    snap.step = s;
    snap.time = static_cast<double>(s);
    for (std::size_t k = 0; k < names.size(); ++k) {
      SubstanceField f;
      f.name = names[k];
      f.concentrations = ConcentrationGrid(2, 1, totals[k][s] / 2.0);
      snap.fields.push_back(f);
    }
    trace.snapshots.push_back(snap);
  }
  return trace;
}

}  // namespace

TEST(Csv, DoublesRoundTripThroughText) {
  for (double v : {0.0, 0.1, 1.0 / 3.0, 0.4132, 1e-300, 123456789.125, -50.0, 49.999999999}) {
    EXPECT_EQ(*parse_decimal(format_double(v)), v);
  }
  EXPECT_FALSE(parse_decimal("nan"));
  EXPECT_FALSE(parse_decimal("inf"));
  EXPECT_FALSE(parse_decimal("1.5x"));
  EXPECT_FALSE(parse_decimal(""));
  EXPECT_FALSE(parse_integer("2.0"));
  EXPECT_EQ(*parse_integer("-7"), -7);
}

TEST(ParsePopulation, FifteenColumnsMessage) {
  const std::string text = "Population,1,1,1,1000,1,1,Escherichia_coli_K12,0,0,0,0,0,0,0\n";
  try {
    (void)parse_population(text);
    FAIL();
  } catch (const ColumnCountError& e) {
    EXPECT_STREQ(e.what(), "Population dataset has 15 instead of 14 columns!");
  }
}

TEST(ParsePopulation, NonNumericBiomassNamesLineAndColumn) {
  const std::string text = population_row(1, 1, 1, 1, "Escherichia_coli_K12") +
                           population_row(1, 2, 1, 1, "Escherichia_coli_K12") +
                           "Population,1,3,1,heavy,1,1,Escherichia_coli_K12,0,0,0,0,0,0\n";
  try {
    (void)parse_population(text, "population_dataset.csv");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 5u);
    EXPECT_STREQ(e.what(),
                 "Format of population_dataset.csv is invalid. Please check line 3, column 5. "
                 "Invalid entry: heavy. Should be of type: nonnegative decimal!");
  }
}

TEST(ParsePopulation, CellTypes) {
  auto expect_type = [](const std::string& row, std::size_t column, const char* type) {
    try {
      (void)parse_population(row);
      ADD_FAILURE() << row;
    } catch (const FormatError& e) {
      EXPECT_EQ(e.column(), column) << row;
      EXPECT_STREQ(cell_type_name(e.expected()), type) << row;
    }
  };
  expect_type("Populatio,1,1,1,1000,1,1,A_b_c,0,0,0,0,0,0\n", 1, "string");
  expect_type("Population,1.5,1,1,1000,1,1,A_b_c,0,0,0,0,0,0\n", 2, "integer");
  expect_type("Population,1,1,1,-3,1,1,A_b_c,0,0,0,0,0,0\n", 5, "nonnegative decimal");
  expect_type("Population,1,1,1,1000,1,1,,0,0,0,0,0,0\n", 8, "string");
  expect_type("Population,1,1,1,1000,1,1,A_b_c,0,0,0,0,0,1e\n", 14, "decimal");
}

TEST(ParsePopulation, RecordCountEqualsLineCountAndBlankLinesAreSkipped) {
  std::string text;
  for (int i = 1; i <= 20; ++i) text += population_row(1, i, 1, 1, "Escherichia_coli_K12");
  text += "\n";
  EXPECT_EQ(parse_population(text).size(), 20u);
  EXPECT_EQ(parse_population(read_file(kData + "/ammonium_population.csv")).size(), 5u);
}

TEST(ParseSubstance, PaperExampleLine) {
  const auto blocks = parse_substance("Substance,Ammonium,2,1,0.4132,0.4090\n");
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].substance, "Ammonium");
  EXPECT_EQ(blocks[0].time, 2);
  EXPECT_EQ(blocks[0].row, 1);
  EXPECT_EQ(blocks[0].values[0], 0.4132);
}

TEST(ParseSubstance, FourByFiveMatrixIndexing) {
  const auto blocks = parse_substance(read_file(kData + "/ammonium_4x5.csv"));
  ASSERT_EQ(blocks.size(), 10u);
  const auto pair = make_dataset_pair({}, blocks);
  EXPECT_EQ(pair.width, 4u);
  EXPECT_EQ(pair.height, 5u);
  auto at = [&](long long t, int x, int y) {
    for (const auto& b : blocks)
      if (b.time == t && b.row == y) return b.values.at(static_cast<std::size_t>(x - 1));
    return -1.0;
  };
  EXPECT_EQ(at(2, 1, 1), 0.4132);
  EXPECT_EQ(at(2, 4, 3), 0.3920);
}

TEST(ParseSubstance, WrongLabelCitesColumnOne) {
  try {
    (void)parse_substance("Subst,Ammonium,2,1,0.4\n", "substance_dataset.csv");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_STREQ(e.what(),
                 "Format of substance_dataset.csv is invalid. Please check line 1, column 1. "
                 "Invalid entry: Subst. Should be of type: string!");
  }
}

TEST(ParseSubstance, NegativeConcentrationRejected) {
  try {
    (void)parse_substance("Substance,Ammonium,2,1,0.4,-1.0\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.column(), 6u);
    EXPECT_EQ(e.expected(), CellType::NonNegativeDecimal);
    EXPECT_EQ(e.entry(), "-1.0");
  }
}

TEST(ParseSubstance, RowWithoutValuesRejected) {
  EXPECT_THROW((void)parse_substance("Substance,Ammonium,2,1\n"), FormatError);
}

TEST(ValidatePair, TimesMismatch) {
  std::string pop;
  std::string sub;
  for (int t = 1; t <= 8; ++t) pop += population_row(t, 1, 1, 1, "Escherichia_coli_K12");
  for (int t = 1; t <= 7; ++t) sub += substance_rows("Glucose", t, 2, 2);
  const auto report = validate_text(pop, sub);
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_EQ(report.errors[0], "The simulation times 1-8 and 1-7 of your datasets don't match!");
  EXPECT_FALSE(report.status_of(kPopulationFileName));
  EXPECT_FALSE(report.status_of(kSubstanceFileName));
}

TEST(ValidatePair, TimeSetsWithGaps) {
  EXPECT_EQ(times_mismatch_message({1, 2, 3, 5}, {1, 2, 3}),
            "The simulation times 1-3, 5 and 1-3 of your datasets don't match!");
}

TEST(ValidatePair, InconsistentMatrixWidths) {
  const std::string pop = population_row(1, 1, 1, 1, "Escherichia_coli_K12");
  const std::string sub = substance_rows("Glucose", 1, 4, 5) + substance_rows("Lactate", 1, 3, 5);
  const auto report = validate_text(pop, sub);
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_EQ(report.errors[0], "The simulation dimensions of x 3 and 4 or y 5 don't match!");
  EXPECT_TRUE(report.status_of(kPopulationFileName));
  EXPECT_FALSE(report.status_of(kSubstanceFileName));
}

TEST(ValidatePair, AgentOutsideArea) {
  const std::string pop = population_row(1, 6, 2, 1, "Escherichia_coli_K12");
  const auto report = validate_text(pop, substance_rows("Glucose", 1, 4, 5));
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_EQ(report.errors[0], "The simulation dimensions of x 4 and 6 or y 5 don't match!");
  EXPECT_FALSE(report.status_of(kPopulationFileName));
}

TEST(ValidatePair, GenotypeBoundToTwoNames) {
  const std::string pop = population_row(1, 1, 1, 1, "Escherichia_coli_K12") +
                          population_row(1, 2, 1, 2, "Blautia_producta_DSM2950") +
                          population_row(1, 3, 1, 2, "Clostridium_ramosum_VPI0427");
  const auto report = validate_text(pop, substance_rows("Glucose", 1, 4, 5));
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_EQ(report.errors[0], "Genotype does not match a name in line 3 of population dataset!");
  EXPECT_FALSE(report.status_of(kPopulationFileName));
  EXPECT_TRUE(report.status_of(kSubstanceFileName));
}

TEST(ValidatePair, NameBoundToTwoGenotypes) {
  const std::string pop = population_row(1, 1, 1, 1, "Escherichia_coli_K12") +
                          population_row(1, 2, 1, 2, "Escherichia_coli_K12");
  const auto report = validate_text(pop, substance_rows("Glucose", 1, 4, 5));
  ASSERT_EQ(report.errors.size(), 1u);
  EXPECT_EQ(report.errors[0], "Genotype does not match a name in line 2 of population dataset!");
}

TEST(ValidatePair, ReportsEveryViolation) {
  const std::string pop = population_row(1, 9, 1, 1, "Escherichia_coli_K12") +
                          population_row(2, 1, 1, 1, "Blautia_producta_DSM2950");
  const auto report = validate_text(pop, substance_rows("Glucose", 1, 4, 5));
  EXPECT_EQ(report.errors.size(), 3u);
}

TEST(ValidatePair, FixtureFilesAreConsistent) {
  const auto report = validate_text(read_file(kData + "/ammonium_population.csv"),
                                    read_file(kData + "/ammonium_4x5.csv"));
  EXPECT_TRUE(report.ok()) << report.errors.front();
}

TEST(SelectFluctuating, OscillatingBeatsConstant) {
  const auto trace =
      handmade_trace(4, {"Acetate", "Butyrate"}, {{2, 2, 2, 2}, {1, 3, 1, 3}});
  EXPECT_EQ(select_fluctuating_substances(trace, 1), std::vector<std::string>{"Butyrate"});
}

TEST(SelectFluctuating, AllConstantIsAlphabetical) {
  const auto trace = handmade_trace(3, {"Zinc", "Acetate", "Lactate"},
                                    {{1, 1, 1}, {2, 2, 2}, {0.3, 0.3, 0.3}});
  EXPECT_EQ(select_fluctuating_substances(trace, 2),
            (std::vector<std::string>{"Acetate", "Lactate"}));
}

TEST(SelectFluctuating, EightFieldsGiveSix) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> totals;
  for (int k = 0; k < 8; ++k) {
    names.push_back("S" + std::to_string(k));
    totals.push_back({1.0, 1.0 + k, 1.0});
  }
  const auto picked = select_fluctuating_substances(handmade_trace(3, names, totals), 6);
  EXPECT_EQ(picked, (std::vector<std::string>{"S7", "S6", "S5", "S4", "S3", "S2"}));
}

TEST(Export, EmptyTraceGivesEmptyFiles) {
  SimulationTrace trace;
  EXPECT_EQ(export_population(trace, {}, FluxMode::computed()), "");
  EXPECT_EQ(export_substance(trace, {}), "");
}

TEST(Export, FourByFiveMatrixLines) {
  SimulationTrace trace;
  trace.width = 4;
  trace.height = 5;
  Snapshot snap;
  SubstanceField f;
  f.name = "Ammonium";
  f.concentrations = ConcentrationGrid(4, 5, 0.0);
  f.concentrations.at(0, 0) = 0.4132;
  f.concentrations.at(2, 3) = 0.3920;
  snap.fields.push_back(f);
  snap.step = 2;
  trace.snapshots.push_back(snap);

  const std::string text = export_substance(trace, {"Ammonium"});
  const auto blocks = parse_substance(text);
  ASSERT_EQ(blocks.size(), 5u);
  for (const auto& b : blocks) EXPECT_EQ(b.values.size(), 4u);
  EXPECT_EQ(text.substr(0, 31), "Substance,Ammonium,2,1,0.4132,0");
  EXPECT_EQ(blocks[2].values[3], 0.3920);
}

TEST(Export, FluxColumnsArePadded) {
  EXPECT_EQ(flux_columns({"Glucose"}),
            (std::vector<std::string>{"Glucose", "none2", "none3", "none4", "none5", "none6"}));
  EXPECT_THROW((void)flux_columns(std::vector<std::string>(7, "x")), DatasetError);
}

TEST(Export, ComputedFluxesEqualLastFluxes) {
  const auto trace = run_simulation(microlab::testing::two_species_config(10), 3);
  const std::vector<std::string> subs{"Glucose", "Lactate"};
  const auto records = parse_population(export_population(trace, subs, FluxMode::computed()));
  std::size_t i = 0;
  for (const auto& snap : trace.snapshots) {
    for (const auto& agent : snap.agents) {
      ASSERT_LT(i, records.size());
      const auto& r = records[i++];
      EXPECT_EQ(r.time, static_cast<long long>(snap.step));
      EXPECT_EQ(r.fluxes[0], agent.last_fluxes.count("Glucose") ? agent.last_fluxes.at("Glucose") : 0.0);
      EXPECT_EQ(r.fluxes[1], agent.last_fluxes.count("Lactate") ? agent.last_fluxes.at("Lactate") : 0.0);
      for (std::size_t k = 2; k < kFluxColumns; ++k) EXPECT_EQ(r.fluxes[k], 0.0);
    }
  }
  EXPECT_EQ(i, records.size());
}

TEST(Export, RandomizedFluxesInRangeAndSeeded) {
  const auto trace = run_simulation(microlab::testing::two_species_config(10), 2);
  const std::vector<std::string> subs{"Glucose", "Lactate"};
  const auto a = export_population(trace, subs, FluxMode::randomized(7));
  const auto b = export_population(trace, subs, FluxMode::randomized(7));
  const auto c = export_population(trace, subs, FluxMode::randomized(8));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& r : parse_population(a)) {
    for (double f : r.fluxes) {
      EXPECT_GE(f, -50.0);
      EXPECT_LE(f, 50.0);
    }
  }
}

TEST(RoundTrip, SelfExportedPairValidatesAndMatchesExactly) {
  const auto trace = run_simulation(microlab::testing::two_species_config(15), 4);
  const auto subs = select_fluctuating_substances(trace);
  const auto records = population_records(trace, subs, FluxMode::computed());
  const auto blocks = substance_blocks(trace, subs);

  const auto parsed_pop = parse_population(write_population(records));
  const auto parsed_sub = parse_substance(write_substance(blocks));
  ASSERT_EQ(parsed_pop.size(), records.size());
  ASSERT_EQ(parsed_sub.size(), blocks.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto expected = records[i];
    expected.line = i + 1;
    EXPECT_EQ(parsed_pop[i], expected);
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    EXPECT_EQ(parsed_sub[i].values, blocks[i].values);
  }
  const auto report = validate_pair(parsed_pop, parsed_sub);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.status_of(kPopulationFileName));
  EXPECT_TRUE(report.status_of(kSubstanceFileName));
}

TEST(ImportPair, ProgressIsMonotoneAndDatasetIsDerived) {
  const auto trace = run_simulation(microlab::testing::two_species_config(15), 8);
  const auto subs = select_fluctuating_substances(trace);
  const std::string pop = export_population(trace, subs, FluxMode::computed());
  const std::string sub = export_substance(trace, subs);
  std::istringstream pin(pop);
  std::istringstream sin(sub);
  ImportOptions options;
  options.population_bytes = pop.size();
  options.substance_bytes = sub.size();
  std::vector<std::pair<ImportStage, double>> events;
  options.on_progress = [&](ImportStage s, double f) { events.emplace_back(s, f); };
  const auto result = import_pair(pin, sin, options);
  ASSERT_TRUE(result.dataset);
  EXPECT_EQ(result.dataset->width, 20u);
  EXPECT_EQ(result.dataset->height, 20u);
  EXPECT_EQ(result.dataset->times.size(), 9u);
  EXPECT_EQ(result.dataset->substances, subs);
  ASSERT_FALSE(events.empty());
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].first == events[i - 1].first) EXPECT_GE(events[i].second, events[i - 1].second);
    EXPECT_GE(static_cast<int>(events[i].first), static_cast<int>(events[i - 1].first));
  }
  EXPECT_EQ(events.back(), std::make_pair(ImportStage::Validating, 1.0));
}

TEST(ImportPair, FormatErrorsOfBothFilesAreReported) {
  std::istringstream pin("Population,1,1,1,1000,1,1,Escherichia_coli_K12,0,0,0,0,0\n");
  std::istringstream sin("Substance,Glucose,x,1,1\n");
  const auto result = import_pair(pin, sin);
  EXPECT_FALSE(result.dataset);
  ASSERT_EQ(result.report.errors.size(), 2u);
  EXPECT_EQ(result.report.errors[0], "Population dataset has 13 instead of 14 columns!");
  EXPECT_EQ(result.report.errors[1],
            "Format of substance_dataset.csv is invalid. Please check line 1, column 3. "
            "Invalid entry: x. Should be of type: integer!");
}
