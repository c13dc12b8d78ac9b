//! Finite groups as validated multiplication tables.
//!
//! Enumeration conventions are fixed so that element indices are stable
//! across runs and machines:
//!
//! * `C<n>`: index `i` is `x^i` for a fixed generator `x`.
//! * `D<n>`: order `2n`; indices `0..n` are `r^i`, indices `n..2n` are `r^i s`,
//!   with `r^n = s^2 = e` and `s r s = r^-1`.
//! * `S<n>`: permutations of `{1..n}` in lexicographic one-line order,
//!   multiplied as functions, `(ab)(k) = a(b(k))`.
//! * `G x H`: pairs `(g, h)` in row-major order, index `g * |H| + h`.

use std::io::Read;

use crate::error::{Error, Result};

/// Default cap on group order; larger groups make the cochain spaces explode.
pub const DEFAULT_MAX_ORDER: usize = 24;

/// Largest `n` accepted by [`FiniteGroup::symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    id: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a multiplication table: closure, identity, inverses and
    /// associativity (the last one is an `O(n^3)` scan).
    pub fn from_table(order: usize, table: &[Vec<usize>]) -> Result<Self> {
        if order == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::NotAGroup(format!("table is not {order}x{order}")));
        }
        if let Some((a, b)) = (0..order)
            .flat_map(|a| (0..order).map(move |b| (a, b)))
            .find(|&(a, b)| table[a][b] >= order)
        {
            return Err(Error::NotAGroup(format!(
                "entry [{a}][{b}] = {} out of range",
                table[a][b]
            )));
        }
        let mul: Vec<usize> = table.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| mul[a * order + b];

        let id = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;

        let mut inv = vec![0; order];
        for a in 0..order {
            inv[a] = (0..order)
                .find(|&b| at(a, b) == id && at(b, a) == id)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
        }

        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        Ok(FiniteGroup {
            name: format!("T{order}"),
            order,
            mul,
            inv,
            id,
            labels: (0..order).map(|i| format!("g{i}")).collect(),
        })
    }

    fn check_cap(order: usize, cap: usize, what: &str) -> Result<()> {
        if order > cap {
            return Err(Error::size_guard(what, order as u128, cap as u128));
        }
        Ok(())
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::cyclic_capped(n, DEFAULT_MAX_ORDER)
    }

    pub fn cyclic_capped(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::parse("cyclic group needs n >= 1"));
        }
        Self::check_cap(n, cap, &format!("C{n}"))?;
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        Ok(Self::from_table(n, &table)?.relabel(format!("C{n}"), labels))
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        Self::dihedral_capped(n, DEFAULT_MAX_ORDER)
    }

    pub fn dihedral_capped(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::parse("dihedral group needs n >= 1"));
        }
        Self::check_cap(2 * n, cap, &format!("D{n}"))?;
        // r^i s^a * r^j s^b = r^(i + (-1)^a j) s^(a+b)
        let split = |k: usize| (k % n, k / n);
        let table: Vec<Vec<usize>> = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (i, a) = split(x);
                        let (j, b) = split(y);
                        let rot = if a == 0 { (i + j) % n } else { (i + n - j) % n };
                        rot + n * ((a + b) % 2)
                    })
                    .collect()
            })
            .collect();
        let rpow = |i: usize| match i {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r^{i}"),
        };
        let labels = (0..2 * n)
            .map(|k| {
                let (i, a) = split(k);
                match (i, a) {
                    (0, 0) => "e".to_string(),
                    (_, 0) => rpow(i),
                    (_, _) => format!("{}s", rpow(i)),
                }
            })
            .collect();
        Ok(Self::from_table(2 * n, &table)?.relabel(format!("D{n}"), labels))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        Self::symmetric_capped(n, DEFAULT_MAX_ORDER)
    }

    pub fn symmetric_capped(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::parse("symmetric group needs n >= 1"));
        }
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::size_guard(
                format!("S{n} enumeration"),
                n as u128,
                MAX_SYMMETRIC_DEGREE as u128,
            ));
        }
        let order: usize = (1..=n).product();
        Self::check_cap(order, cap, &format!("S{n}"))?;
        let perms = lexicographic_permutations(n);
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = (0..n).map(|k| a[b[k]]).collect();
                        index_of(&ab)
                    })
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|&k| char::from_digit(k as u32 + 1, 10).unwrap()).collect())
            .collect();
        Ok(Self::from_table(order, &table)?.relabel(format!("S{n}"), labels))
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        Self::direct_product_capped(g, h, DEFAULT_MAX_ORDER)
    }

    pub fn direct_product_capped(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<Self> {
        let order = g.order * h.order;
        let name = format!("{}x{}", g.name, h.name);
        Self::check_cap(order, cap, &name)?;
        let table: Vec<Vec<usize>> = (0..order)
            .map(|x| {
                (0..order)
                    .map(|y| g.mul(x / h.order, y / h.order) * h.order + h.mul(x % h.order, y % h.order))
                    .collect()
            })
            .collect();
        let labels = (0..order)
            .map(|x| format!("{}:{}", g.labels[x / h.order], h.labels[x % h.order]))
            .collect();
        Ok(Self::from_table(order, &table)?.relabel(name, labels))
    }

    /// Parses `C<n>`, `D<n>`, `S<n>` and products joined by `x`, e.g. `C2xC2`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::parse_capped(spec, DEFAULT_MAX_ORDER)
    }

    pub fn parse_capped(spec: &str, cap: usize) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(Error::parse("empty group spec"));
        }
        let mut acc: Option<FiniteGroup> = None;
        for factor in spec.split('x') {
            let factor = factor.trim();
            let mut chars = factor.chars();
            let kind = chars
                .next()
                .ok_or_else(|| Error::parse(format!("empty factor in {spec:?}")))?;
            let n: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::parse(format!("bad factor {factor:?} in {spec:?}")))?;
            let g = match kind.to_ascii_uppercase() {
                'C' => Self::cyclic_capped(n, cap)?,
                'D' => Self::dihedral_capped(n, cap)?,
                'S' => Self::symmetric_capped(n, cap)?,
                _ => return Err(Error::parse(format!("unknown group family {kind:?} in {spec:?}"))),
            };
            acc = Some(match acc {
                None => g,
                Some(prev) => Self::direct_product_capped(&prev, &g, cap)?,
            });
        }
        Ok(acc.expect("at least one factor"))
    }

    /// Reads the CSV table format: a first line `order=n`, then `n` rows of
    /// `n` comma-separated element indices.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| Error::parse("missing order line"))??;
        let order: usize = header
            .get(0)
            .and_then(|f| f.strip_prefix("order="))
            .and_then(|n| n.trim().parse().ok())
            .ok_or_else(|| Error::parse("first line must be order=<n>"))?;
        let mut table = Vec::with_capacity(order);
        for rec in records {
            let rec = rec?;
            if rec.iter().all(str::is_empty) {
                continue;
            }
            let row = rec
                .iter()
                .map(|v| v.parse::<usize>().map_err(|_| Error::parse(format!("bad entry {v:?}"))))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Self::from_table(order, &table)
    }

    /// Replaces the display name and element labels.
    pub fn relabel(mut self, name: impl Into<String>, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.name = name.into();
        self.labels = labels;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Ordered product `g_0 g_1 ... g_k`; the identity for an empty slice.
    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(self.id, |acc, &g| self.mul(acc, g))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Element index for a label, or a bare decimal index.
    pub fn element(&self, label: &str) -> Result<usize> {
        let label = label.trim();
        if let Some(i) = self.labels.iter().position(|l| l == label) {
            return Ok(i);
        }
        match label.parse::<usize>() {
            Ok(i) if i < self.order => Ok(i),
            _ => Err(Error::parse(format!("no element {label:?} in {}", self.name))),
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member; the
    /// identity class comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order)
                .map(|x| self.mul(self.mul(x, a), self.inv(x)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    /// Element orders, indexed by element.
    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != self.id {
                    x = self.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect()
    }
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}
