#ifndef FASTDIAG_MOVES_HPP_
#define FASTDIAG_MOVES_HPP_

// Presentation transformations that preserve the diagram group: substituting
// one side of a relation for the other inside another relation or the base
// word, and adding or removing a generator x together with a single defining
// relation x = w.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fastdiag/presentation.hpp"

namespace fastdiag {

  class MoveError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct SubstInRelation {
    RelId       target;
    Side        side;
    std::size_t position;
    RelId       using_rel;
    Direction   direction;
  };

  struct SubstInBase {
    std::size_t position;
    RelId       using_rel;
    Direction   direction;
  };

  // Appends the generator and the relation name = word.
  struct AddGenerator {
    std::string              name;
    std::vector<std::string> word;
  };

  struct RemoveGenerator {
    std::string name;
  };

  struct Rename {
    std::vector<std::pair<std::string, std::string>> mapping;
  };

  using Step = std::variant<SubstInRelation, SubstInBase, AddGenerator,
                            RemoveGenerator, Rename>;

  // Relation ids are positions: removing a generator drops its relation and
  // shifts later ids down, adding one appends. Throws MoveError naming the
  // violated precondition.
  Presentation apply_step(Presentation const& p, Step const& s);

  // The step in script syntax.
  std::string format_step(Step const& s);

  struct DerivationScript {
    Presentation             start;
    std::vector<Step>        steps;
    std::vector<std::size_t> step_lines;  // script line of each step
    Presentation             expect;
  };

  // Paths in start/expect lines are resolved against base_dir. Throws
  // ParseError.
  DerivationScript parse_script(std::string_view             text,
                                std::filesystem::path const& base_dir);
  DerivationScript load_script(std::filesystem::path const& path);

  struct StepOutcome {
    std::size_t  line = 0;
    std::string  step;
    bool         ok = false;
    std::string  violation;
    Presentation snapshot;  // after the step, or before it on failure
  };

  struct StepReport {
    std::vector<StepOutcome> steps;  // every step attempted
    bool                     ok = false;
    bool                     matches_expect = false;
    std::string              failure;
    Presentation             final_presentation;
  };

  StepReport verify_script(DerivationScript const& script);

  // Same alphabet, the same multiset of relations with unordered sides and
  // the same base word, comparing generators by name.
  bool same_presentation(Presentation const& p1, Presentation const& p2);

  using Renaming = std::map<std::string, std::string>;

  // A bijection of generator names taking p1 onto p2 in the sense of
  // same_presentation.
  std::optional<Renaming> equal_up_to_renaming(Presentation const& p1,
                                               Presentation const& p2);

  Presentation rename(Presentation const& p, Renaming const& r);

  // Swaps paired letters and reverses every word. Every letter must occur in
  // exactly one pair; a letter may be paired with itself.
  Presentation bar_reverse_symmetry(
      Presentation const&                                     p,
      std::vector<std::pair<std::string, std::string>> const& pairing);

  struct NamedPresentation {
    std::string  name;
    Presentation presentation;
  };

  // f4-mono, f4-typed, f4-six, and f4-five (f4-six without u0).
  std::vector<NamedPresentation> const& f4_presets();
  Presentation const&                   f4_preset(std::string_view name);

}  // namespace fastdiag

#endif  // FASTDIAG_MOVES_HPP_
