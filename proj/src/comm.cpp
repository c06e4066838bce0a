#include "bdc/comm.hpp"

#include <algorithm>

namespace bdc::comm {

void BfsPhase::init(NodeId self, const std::vector<NodeId>& neighbors) {
  self_ = self;
  neighbors_ = neighbors;
  if (self_ == 0) {
    adopted_ = true;
    parent_ = 0;
    depth_ = 0;
  }
}

void BfsPhase::on_message(NodeId from, const sim::Message& m) {
  if (m.tag == base_ + kTagWave) {
    ++reported_;
    if (!adopted_) {
      wave_candidates_.push_back(from);
      depth_ = static_cast<int>(m.fields[0]);
    }
  } else if (m.tag == base_ + kTagChild) {
    ++reported_;
    children_.push_back(from);
  }
}

void BfsPhase::advance(sim::LinkQueues& out) {
  if (!started_ || done_) return;
  if (!adopted_ && !wave_candidates_.empty()) {
    adopted_ = true;
    parent_ = *std::min_element(wave_candidates_.begin(), wave_candidates_.end());
  }
  if (adopted_ && !sent_) {
    sent_ = true;
    for (NodeId u : neighbors_) {
      sim::Message m;
      if (!is_root() && u == parent_) {
        m.tag = base_ + kTagChild;
        m.fields = {depth_};
      } else {
        m.tag = base_ + kTagWave;
        m.fields = {depth_ + 1};
      }
      out.enqueue(u, std::move(m));
    }
  }
  if (sent_ && reported_ == static_cast<int>(neighbors_.size())) {
    std::sort(children_.begin(), children_.end());
    done_ = true;
  }
}

void BroadcastPhase::set_items(std::vector<Item> sorted_items) {
  own_.assign(sorted_items.begin(), sorted_items.end());
}

void BroadcastPhase::on_message(NodeId from, const sim::Message& m) {
  int t = m.tag - base_;
  if (t == kTagUpItem) {
    child_buf_[from].push_back(m.fields);
  } else if (t == kTagUpEnd) {
    child_ended_.insert(from);
  } else if (t == kTagDownItem) {
    down_in_.push_back(m.fields);
  } else if (t == kTagDownEnd) {
    down_end_in_ = true;
  }
}

bool BroadcastPhase::up_ready() const {
  for (NodeId c : tree_->children()) {
    if (child_ended_.count(c)) continue;  // no further items on this link
    auto it = child_buf_.find(c);
    if (it == child_buf_.end() || it->second.empty()) return false;
  }
  return true;
}

bool BroadcastPhase::pop_min(Item* out) {
  if (!up_ready()) return false;
  std::deque<Item>* best = nullptr;
  for (NodeId c : tree_->children()) {
    auto it = child_buf_.find(c);
    if (it == child_buf_.end() || it->second.empty()) continue;
    if (!best || it->second.front() < best->front()) best = &it->second;
  }
  if (!own_.empty() && (!best || own_.front() < best->front())) best = &own_;
  if (!best) return false;
  *out = std::move(best->front());
  best->pop_front();
  return true;
}

void BroadcastPhase::advance(sim::LinkQueues& out) {
  if (!started_ || done_) return;
  if (!up_ended_) {
    Item item;
    while (pop_min(&item)) {
      if (have_last_ && item == last_emitted_) continue;  // duplicate across subtrees
      last_emitted_ = item;
      have_last_ = true;
      if (tree_->is_root()) {
        result_.push_back(item);
        for (NodeId c : tree_->children())
          out.enqueue(c, sim::Message{base_ + kTagDownItem, item, item_words_});
      } else {
        out.enqueue(tree_->parent(), sim::Message{base_ + kTagUpItem, item, item_words_});
      }
    }
    bool children_done = child_ended_.size() == tree_->children().size();
    bool buffers_empty = true;
    for (const auto& [c, dq] : child_buf_)
      if (!dq.empty()) buffers_empty = false;
    if (own_.empty() && children_done && buffers_empty) {
      up_ended_ = true;
      if (tree_->is_root()) {
        for (NodeId c : tree_->children()) out.enqueue(c, sim::Message{base_ + kTagDownEnd, {}, 1});
        done_ = true;
      } else {
        out.enqueue(tree_->parent(), sim::Message{base_ + kTagUpEnd, {}, 1});
      }
    }
  }
  if (!tree_->is_root()) {
    while (!down_in_.empty()) {
      Item item = std::move(down_in_.front());
      down_in_.pop_front();
      result_.push_back(item);
      for (NodeId c : tree_->children())
        out.enqueue(c, sim::Message{base_ + kTagDownItem, item, item_words_});
    }
    if (down_end_in_ && !done_) {
      for (NodeId c : tree_->children()) out.enqueue(c, sim::Message{base_ + kTagDownEnd, {}, 1});
      done_ = true;
    }
  }
}

void ExtremeBasisPhase::set_items(std::vector<Item> items) {
  std::sort(items.begin(), items.end(),
            [this](const Item& a, const Item& b) { return before(a, b); });
  own_.assign(items.begin(), items.end());
}

void ExtremeBasisPhase::on_message(NodeId from, const sim::Message& m) {
  int t = m.tag - base_;
  if (t == kTagUpItem) {
    child_buf_[from].push_back(m.fields);
  } else if (t == kTagUpEnd) {
    child_ended_.insert(from);
  } else if (t == kTagDownItem) {
    down_in_.push_back(m.fields);
  } else if (t == kTagDownEnd) {
    down_end_in_ = true;
  }
}

bool ExtremeBasisPhase::up_ready() const {
  for (NodeId c : tree_->children()) {
    if (child_ended_.count(c)) continue;
    auto it = child_buf_.find(c);
    if (it == child_buf_.end() || it->second.empty()) return false;
  }
  return true;
}

bool ExtremeBasisPhase::pop_min(Item* out) {
  if (!up_ready()) return false;
  std::deque<Item>* best = nullptr;
  for (NodeId c : tree_->children()) {
    auto it = child_buf_.find(c);
    if (it == child_buf_.end() || it->second.empty()) continue;
    if (!best || before(it->second.front(), best->front())) best = &it->second;
  }
  if (!own_.empty() && (!best || before(own_.front(), best->front()))) best = &own_;
  if (!best) return false;
  *out = std::move(best->front());
  best->pop_front();
  return true;
}

void ExtremeBasisPhase::advance(sim::LinkQueues& out) {
  if (!started_ || done_) return;
  if (!up_ended_) {
    Item item;
    while (pop_min(&item)) {
      if (have_last_ && item == last_seen_) continue;  // same element held twice
      last_seen_ = item;
      have_last_ = true;
      if (admit_(kept_, item)) {
        kept_.push_back(item);
        if (!tree_->is_root())
          out.enqueue(tree_->parent(), sim::Message{base_ + kTagUpItem, item, item_words_});
      } else if (tree_->is_root() && discarded_.size() < 64) {
        discarded_.push_back(item);
      }
    }
    bool children_done = child_ended_.size() == tree_->children().size();
    bool buffers_empty = true;
    for (const auto& [c, dq] : child_buf_)
      if (!dq.empty()) buffers_empty = false;
    if (own_.empty() && children_done && buffers_empty) {
      up_ended_ = true;
      if (tree_->is_root()) {
        // a greedy-discarded element must stay inadmissible against the basis
        for (const Item& d : discarded_)
          if (admit_(kept_, d))
            fail(Err::FilterNotMonotone, "discarded element re-admitted by the filter");
        basis_ = kept_;
        for (const Item& b : basis_)
          for (NodeId c : tree_->children())
            out.enqueue(c, sim::Message{base_ + kTagDownItem, b, item_words_});
        for (NodeId c : tree_->children()) out.enqueue(c, sim::Message{base_ + kTagDownEnd, {}, 1});
        done_ = true;
      } else {
        out.enqueue(tree_->parent(), sim::Message{base_ + kTagUpEnd, {}, 1});
      }
    }
  }
  if (!tree_->is_root()) {
    while (!down_in_.empty()) {
      Item item = std::move(down_in_.front());
      down_in_.pop_front();
      basis_.push_back(item);
      for (NodeId c : tree_->children())
        out.enqueue(c, sim::Message{base_ + kTagDownItem, item, item_words_});
    }
    if (down_end_in_ && !done_) {
      for (NodeId c : tree_->children()) out.enqueue(c, sim::Message{base_ + kTagDownEnd, {}, 1});
      done_ = true;
    }
  }
}

}  // namespace bdc::comm
