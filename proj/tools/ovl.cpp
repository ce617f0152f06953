// Command-line front end.

#include "ovl/cli.hpp"
#include "ovl/torsion.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Exact discriminant forms and over-lattices"};
  app.require_subcommand(1);

  std::string file, target;
  std::int64_t prime = 0, k_min = 1, k_max = 1, k = 1, bound = 4;
  std::string format = "text";

  auto* disc = app.add_subcommand("discriminant", "discriminant group of a lattice file");
  disc->add_option("file", file, "lattice file")->required();

  auto* over = app.add_subcommand("overlattices", "over-lattices from isotropic subgroups of prime order");
  over->add_option("file", file, "lattice file")->required();
  over->add_option("--prime", prime, "subgroup order")->required();
  auto* target_opt = over->add_option("--target", target, "lattice file to compare genus with");

  auto* table = app.add_subcommand("kummer-table", "number of over-lattices of T(A)(3) isometric to T(X)");
  table->add_option("--k-min", k_min)->required();
  table->add_option("--k-max", k_max)->required();
  table->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

  auto* verify = app.add_subcommand("verify", "run the checks for one k");
  verify->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  verify->add_option("--bound", bound, "entry bound for the isometry search")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*disc) return ovl::cmd_discriminant(file, std::cout);
    if (*over)
      return ovl::cmd_overlattices(file, prime, *target_opt ? std::optional<std::string>(target) : std::nullopt, std::cout);
    if (*table) return ovl::cmd_kummer_table(k_min, k_max, format, std::cout);
    if (*verify) return ovl::cmd_verify(k, bound, std::cout);
  } catch (const ovl::UndecidedError& e) {
    std::cerr << "ovl: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "ovl: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
