#ifndef PCFGKIT_SYMBOL_TABLE_HPP_
#define PCFGKIT_SYMBOL_TABLE_HPP_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pcfgkit {

// Interns names to dense ids 0..size()-1, in first-insertion order.
class SymbolTable {
  public:
    int intern(const std::string& name) {
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }

    std::optional<int> lookup(const std::string& name) const {
        auto it = ids_.find(name);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(int id) const { return names_[static_cast<size_t>(id)]; }
    int size() const { return static_cast<int>(names_.size()); }
    bool contains(const std::string& name) const { return ids_.count(name) != 0; }
    const std::vector<std::string>& names() const { return names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
};

}  // namespace pcfgkit

#endif  // PCFGKIT_SYMBOL_TABLE_HPP_
