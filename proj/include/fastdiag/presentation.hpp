#ifndef FASTDIAG_PRESENTATION_HPP_
#define FASTDIAG_PRESENTATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fastdiag {

  // Index of a generator in a presentation's alphabet.
  using GenId = std::uint32_t;
  using Word  = std::vector<GenId>;
  using RelId = std::size_t;

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::string const& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept {
      return line_;
    }

   private:
    std::size_t line_;
  };

  class RewriteError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  enum class Direction { lhs_to_rhs, rhs_to_lhs };
  enum class Side { lhs, rhs };

  struct Relation {
    Word lhs;
    Word rhs;

    Word const& side(Side s) const noexcept {
      return s == Side::lhs ? lhs : rhs;
    }
    Word& side(Side s) noexcept {
      return s == Side::lhs ? lhs : rhs;
    }
    // The word matched when rewriting in direction d.
    Word const& source(Direction d) const noexcept {
      return d == Direction::lhs_to_rhs ? lhs : rhs;
    }
    Word const& target(Direction d) const noexcept {
      return d == Direction::lhs_to_rhs ? rhs : lhs;
    }

    bool operator==(Relation const&) const = default;
  };

  // A semigroup presentation with an optional base word. Relation ids are
  // their positions in relations().
  class Presentation {
   public:
    Presentation() = default;
    Presentation(std::vector<std::string> alphabet,
                 std::vector<Relation>    relations,
                 std::optional<Word>      base = std::nullopt);

    std::vector<std::string> const& alphabet() const noexcept {
      return alphabet_;
    }
    std::vector<Relation> const& relations() const noexcept {
      return relations_;
    }
    std::optional<Word> const& base() const noexcept {
      return base_;
    }
    std::size_t size() const noexcept {
      return alphabet_.size();
    }

    std::string const& name(GenId g) const {
      return alphabet_.at(g);
    }
    std::optional<GenId> find(std::string_view name) const;
    GenId                id(std::string_view name) const;

    Relation const& relation(RelId r) const;

    // Parses whitespace separated generator names.
    Word        parse_word(std::string_view text) const;
    std::string format_word(Word const& w, std::string_view sep = " ") const;

    bool operator==(Presentation const&) const = default;

   private:
    void check() const;

    std::vector<std::string> alphabet_;
    std::vector<Relation>    relations_;
    std::optional<Word>      base_;
  };

  Presentation parse_presentation(std::string_view text);
  std::string  serialize(Presentation const& p);

  bool is_valid_generator_name(std::string_view name);

  // True iff every relation has exactly one side of length 1 and no generator
  // is the short side of two relations.
  bool is_tree_like(Presentation const& p);

  // Replaces the occurrence of rel.source(dir) starting at position by
  // rel.target(dir). Throws RewriteError if it does not occur there.
  Word rewrite_word(Word const&     w,
                    Relation const& rel,
                    Direction       dir,
                    std::size_t     position);

  bool occurs_at(Word const& w, Word const& sub, std::size_t position);

}  // namespace fastdiag

#endif  // FASTDIAG_PRESENTATION_HPP_
