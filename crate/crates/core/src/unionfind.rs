//! Union-find with rollback, tracking per-component vertex masks.
//!
//! Vertices `0..n1` are the X-side, `n1..n1+n2` the Y-side. No path
//! compression, so every change is a constant-size history entry and
//! [`ComponentDsu::rollback`] restores any earlier [`ComponentDsu::time`].

#[derive(Clone, Debug)]
enum Entry {
    /// `child` was hung under `root`; `root`'s old payload is saved.
    Union { child: u8, root: u8, old: Payload },
    /// Only `root`'s matching bound changed.
    Bound { root: u8, old: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Payload {
    xs: u64,
    ys: u64,
    size: u8,
    bound: u8,
}

#[derive(Clone, Debug)]
pub struct ComponentDsu {
    n1: usize,
    parent: Vec<u8>,
    data: Vec<Payload>,
    history: Vec<Entry>,
}

impl ComponentDsu {
    pub fn new(n1: usize, n2: usize) -> Self {
        let n = n1 + n2;
        debug_assert!(n < u8::MAX as usize);
        let parent = (0..n as u8).collect();
        let data = (0..n)
            .map(|v| {
                let (xs, ys) = if v < n1 { (1u64 << v, 0) } else { (0, 1u64 << (v - n1)) };
                Payload {
                    xs,
                    ys,
                    size: 1,
                    bound: 0,
                }
            })
            .collect();
        ComponentDsu {
            n1,
            parent,
            data,
            history: Vec::new(),
        }
    }

    #[inline]
    pub fn x(&self, x: usize) -> usize {
        x
    }

    #[inline]
    pub fn y(&self, y: usize) -> usize {
        self.n1 + y
    }

    #[inline]
    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] as usize != v {
            v = self.parent[v] as usize;
        }
        v
    }

    pub fn time(&self) -> usize {
        self.history.len()
    }

    /// X- and Y-members of the component rooted at `root`.
    #[inline]
    pub fn members(&self, root: usize) -> (u64, u64) {
        let d = &self.data[root];
        (d.xs, d.ys)
    }

    /// Stored upper bound on the component's matching number.
    #[inline]
    pub fn bound(&self, root: usize) -> usize {
        self.data[root].bound as usize
    }

    pub fn set_bound(&mut self, root: usize, bound: usize) {
        let old = self.data[root].bound;
        if old as usize != bound {
            self.history.push(Entry::Bound { root: root as u8, old });
            self.data[root].bound = bound as u8;
        }
    }

    /// Merge the components of two roots; returns the surviving root.
    pub fn union_roots(&mut self, a: usize, b: usize) -> usize {
        if a == b {
            return a;
        }
        let (root, child) = if self.data[a].size >= self.data[b].size {
            (a, b)
        } else {
            (b, a)
        };
        let old = self.data[root];
        self.history.push(Entry::Union {
            child: child as u8,
            root: root as u8,
            old,
        });
        self.parent[child] = root as u8;
        let c = self.data[child];
        let r = &mut self.data[root];
        r.xs |= c.xs;
        r.ys |= c.ys;
        r.size += c.size;
        root
    }

    pub fn rollback(&mut self, t: usize) {
        while self.history.len() > t {
            match self.history.pop().expect("history is longer than t") {
                Entry::Union { child, root, old } => {
                    self.parent[child as usize] = child;
                    self.data[root as usize] = old;
                }
                Entry::Bound { root, old } => self.data[root as usize].bound = old,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut d = ComponentDsu::new(3, 3);
        let t0 = d.time();
        let r = d.union_roots(d.find(d.x(0)), d.find(d.y(1)));
        assert_eq!(d.members(r), (0b001, 0b010));
        d.set_bound(r, 1);
        let t1 = d.time();
        let r2 = d.union_roots(d.find(d.x(2)), d.find(d.y(1)));
        assert_eq!(d.members(r2), (0b101, 0b010));
        assert_eq!(d.find(d.x(2)), d.find(d.x(0)));
        d.rollback(t1);
        assert_ne!(d.find(d.x(2)), d.find(d.x(0)));
        assert_eq!(d.bound(d.find(d.x(0))), 1);
        d.rollback(t0);
        assert_eq!(d.bound(d.find(d.x(0))), 0);
        assert_ne!(d.find(d.x(0)), d.find(d.y(1)));
        assert_eq!(d.members(d.find(d.x(0))), (1, 0));
    }
}
