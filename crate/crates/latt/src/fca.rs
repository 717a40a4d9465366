//! Formal concept analysis: contexts, derivation operators, concept
//! lattices, and the canonical concept-algebra weak dicomplementation.

use crate::bits::ElementSet;
use crate::error::{LattError, Result};
use crate::lattice::FiniteLattice;
use crate::wdl::{DicompLattice, DualWeakComplementation, WeakComplementation};

/// Caps on context dimensions and on the number of concepts.
pub const MAX_CONTEXT_SIDE: usize = 1024;

/// A formal context: objects, attributes, and an incidence relation.
#[derive(Clone, Debug)]
pub struct FormalContext {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    /// `rows[g]` is the attribute set of object `g`.
    rows: Vec<ElementSet>,
    /// `cols[m]` is the object set of attribute `m`.
    cols: Vec<ElementSet>,
}

/// A formal concept: a closed (extent, intent) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Concept {
    pub extent: ElementSet,
    pub intent: ElementSet,
}

impl FormalContext {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: &[Vec<bool>],
    ) -> Result<FormalContext> {
        if objects.len() > MAX_CONTEXT_SIDE || attributes.len() > MAX_CONTEXT_SIDE {
            return Err(LattError::CapExceeded(
                objects.len().max(attributes.len()),
                MAX_CONTEXT_SIDE,
            ));
        }
        for side in [&objects, &attributes] {
            let mut seen = std::collections::HashSet::new();
            for label in side {
                if !seen.insert(label) {
                    return Err(LattError::Parse(format!("duplicate label {label:?}")));
                }
            }
        }
        if incidence.len() != objects.len()
            || incidence.iter().any(|r| r.len() != attributes.len())
        {
            return Err(LattError::Parse(
                "incidence matrix does not match context dimensions".into(),
            ));
        }
        let rows: Vec<ElementSet> = incidence
            .iter()
            .map(|r| {
                ElementSet::from_iter(
                    attributes.len(),
                    r.iter().enumerate().filter(|(_, &v)| v).map(|(i, _)| i),
                )
            })
            .collect();
        let cols: Vec<ElementSet> = (0..attributes.len())
            .map(|m| {
                ElementSet::from_iter(
                    objects.len(),
                    incidence
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| r[m])
                        .map(|(g, _)| g),
                )
            })
            .collect();
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            cols,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn incident(&self, g: usize, m: usize) -> bool {
        self.rows[g].contains(m)
    }

    /// `A' = { m : every object of A has m }`.
    pub fn derive_objects(&self, a: &ElementSet) -> ElementSet {
        let mut out = ElementSet::full(self.attribute_count());
        for g in a.iter() {
            out = out.intersection(&self.rows[g]);
        }
        out
    }

    /// `B' = { g : g has every attribute of B }`.
    pub fn derive_attributes(&self, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::full(self.object_count());
        for m in b.iter() {
            out = out.intersection(&self.cols[m]);
        }
        out
    }

    fn intent_closure(&self, b: &ElementSet) -> ElementSet {
        self.derive_objects(&self.derive_attributes(b))
    }

    /// All concepts in lectic (NextClosure) order of their intents.
    pub fn concepts(&self) -> Result<Vec<Concept>> {
        let m = self.attribute_count();
        let mut out = Vec::new();
        let mut intent = self.intent_closure(&ElementSet::empty(m));
        loop {
            out.push(Concept {
                extent: self.derive_attributes(&intent),
                intent: intent.clone(),
            });
            if out.len() > crate::lattice::MAX_ELEMENTS {
                return Err(LattError::CapExceeded(
                    out.len(),
                    crate::lattice::MAX_ELEMENTS,
                ));
            }
            match self.next_intent(&intent) {
                Some(next) => intent = next,
                None => return Ok(out),
            }
        }
    }

    fn next_intent(&self, b: &ElementSet) -> Option<ElementSet> {
        let m = self.attribute_count();
        for i in (0..m).rev() {
            if b.contains(i) {
                continue;
            }
            let mut probe = ElementSet::from_iter(m, b.iter().filter(|&x| x < i));
            probe.insert(i);
            let closed = self.intent_closure(&probe);
            if closed.iter().find(|&x| !b.contains(x)) == Some(i) {
                return Some(closed);
            }
        }
        None
    }

    /// The concept lattice, ordered by extent inclusion, with the concept
    /// list indexed compatibly with the lattice elements.
    pub fn concept_lattice(&self) -> Result<(FiniteLattice, Vec<Concept>)> {
        let concepts = self.concepts()?;
        let k = concepts.len();
        let mut matrix = vec![vec![false; k]; k];
        for (i, ci) in concepts.iter().enumerate() {
            for (j, cj) in concepts.iter().enumerate() {
                matrix[i][j] = ci.extent.is_subset(&cj.extent);
            }
        }
        let lat = FiniteLattice::validate(&matrix)?;
        Ok((lat, concepts))
    }

    /// The concept algebra: the concept lattice equipped with
    /// `(A,B)^Δ = ((G∖A)'', (G∖A)')` and `(A,B)^∇ = ((M∖B)', (M∖B)'')`.
    pub fn concept_algebra(&self) -> Result<(DicompLattice, Vec<Concept>)> {
        let (lat, concepts) = self.concept_lattice()?;
        let index_of_extent: std::collections::HashMap<ElementSet, usize> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.clone(), i))
            .collect();
        let mut delta = vec![0usize; concepts.len()];
        let mut nabla = vec![0usize; concepts.len()];
        for (i, c) in concepts.iter().enumerate() {
            let ext = self.derive_attributes(&self.derive_objects(&c.extent.complement()));
            delta[i] = index_of_extent[&ext];
            let ext = self.derive_attributes(&c.intent.complement());
            nabla[i] = index_of_extent[&ext];
        }
        let delta = WeakComplementation::new(&lat, delta)
            .expect("the concept algebra operation is a weak complementation");
        let nabla = DualWeakComplementation::new(&lat, nabla)
            .expect("the concept algebra operation is a dual weak complementation");
        let alg = DicompLattice::new(lat, delta, nabla)
            .expect("concept algebra operations are compatible");
        Ok((alg, concepts))
    }
}

/// The standard context of a finite lattice: join-irreducibles as
/// objects, meet-irreducibles as attributes, incidence `j ≤ m`.
pub struct StandardContext {
    pub context: FormalContext,
    /// Lattice element behind each object index.
    pub object_elements: Vec<usize>,
    /// Lattice element behind each attribute index.
    pub attribute_elements: Vec<usize>,
}

pub fn standard_context(lat: &FiniteLattice) -> StandardContext {
    let labels = lat.labels();
    let objects: Vec<usize> = lat.join_irreducibles().to_vec();
    let attributes: Vec<usize> = lat.meet_irreducibles().to_vec();
    let incidence: Vec<Vec<bool>> = objects
        .iter()
        .map(|&j| attributes.iter().map(|&m| lat.le(j, m)).collect())
        .collect();
    let context = FormalContext::new(
        objects.iter().map(|&j| labels[j].clone()).collect(),
        attributes.iter().map(|&m| labels[m].clone()).collect(),
        &incidence,
    )
    .expect("lattice labels are unique");
    StandardContext {
        context,
        object_elements: objects,
        attribute_elements: attributes,
    }
}

/// The map sending a lattice element `x` to the concept
/// `(Ji ∩ (x], Mi ∩ [x))` of its standard context, as an index into the
/// concept list. Total exactly when the concept lattice reconstructs the
/// lattice.
pub fn standard_embedding(
    lat: &FiniteLattice,
    std_ctx: &StandardContext,
    concepts: &[Concept],
) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(lat.n());
    for x in 0..lat.n() {
        let extent = ElementSet::from_iter(
            std_ctx.object_elements.len(),
            std_ctx
                .object_elements
                .iter()
                .enumerate()
                .filter(|(_, &j)| lat.le(j, x))
                .map(|(i, _)| i),
        );
        let intent = ElementSet::from_iter(
            std_ctx.attribute_elements.len(),
            std_ctx
                .attribute_elements
                .iter()
                .enumerate()
                .filter(|(_, &m)| lat.le(x, m))
                .map(|(i, _)| i),
        );
        let idx = concepts
            .iter()
            .position(|c| c.extent == extent && c.intent == intent)?;
        out.push(idx);
    }
    Some(out)
}

/// Writes the Burmeister `.cxt` format.
pub fn to_cxt(ctx: &FormalContext) -> String {
    let mut out = String::from("B\n\n");
    out.push_str(&format!("{}\n{}\n\n", ctx.object_count(), ctx.attribute_count()));
    for g in &ctx.objects {
        out.push_str(g);
        out.push('\n');
    }
    for m in &ctx.attributes {
        out.push_str(m);
        out.push('\n');
    }
    for g in 0..ctx.object_count() {
        for m in 0..ctx.attribute_count() {
            out.push(if ctx.incident(g, m) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// Reads the Burmeister `.cxt` format: a `B` header line, the object and
/// attribute counts, the names, then `X`/`.` incidence rows. Blank lines
/// between sections are tolerated.
pub fn from_cxt(text: &str) -> Result<FormalContext> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r'));
    let header = lines
        .next()
        .ok_or_else(|| LattError::Parse("empty cxt file".into()))?;
    if header.trim() != "B" {
        return Err(LattError::Parse(format!(
            "expected 'B' header, found {header:?}"
        )));
    }
    let mut rest: Vec<&str> = lines.collect();
    rest.retain(|l| !l.trim().is_empty());
    let mut pos = 0;
    let mut take = |what: &str| -> Result<&str> {
        let line = rest
            .get(pos)
            .ok_or_else(|| LattError::Parse(format!("missing {what}")))?;
        pos += 1;
        Ok(line)
    };
    let g: usize = take("object count")?
        .trim()
        .parse()
        .map_err(|_| LattError::Parse("bad object count".into()))?;
    let m: usize = take("attribute count")?
        .trim()
        .parse()
        .map_err(|_| LattError::Parse("bad attribute count".into()))?;
    let mut objects = Vec::with_capacity(g);
    for _ in 0..g {
        objects.push(take("object name")?.to_string());
    }
    let mut attributes = Vec::with_capacity(m);
    for _ in 0..m {
        attributes.push(take("attribute name")?.to_string());
    }
    let mut incidence = Vec::with_capacity(g);
    for _ in 0..g {
        let row = take("incidence row")?;
        let cells: Vec<bool> = row
            .chars()
            .map(|c| matches!(c, 'X' | 'x'))
            .collect();
        if row.chars().count() != m {
            return Err(LattError::Parse(format!(
                "incidence row {row:?} has wrong length"
            )));
        }
        incidence.push(cells);
    }
    FormalContext::new(objects, attributes, &incidence)
}

/// Reads a CSV incidence table: first row holds attribute names (first
/// cell ignored), each following row an object name and `X`/empty cells.
pub fn from_csv(text: &str) -> Result<FormalContext> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| LattError::Parse("empty csv".into()))?;
    let attributes: Vec<String> = header
        .split(',')
        .skip(1)
        .map(|s| s.trim().to_string())
        .collect();
    let mut objects = Vec::new();
    let mut incidence = Vec::new();
    for line in lines {
        let mut cells = line.split(',');
        let name = cells
            .next()
            .ok_or_else(|| LattError::Parse("missing object name".into()))?;
        objects.push(name.trim().to_string());
        let row: Vec<bool> = cells
            .map(|c| matches!(c.trim(), "X" | "x"))
            .collect();
        if row.len() != attributes.len() {
            return Err(LattError::Parse(format!(
                "csv row for {name:?} has {} cells, expected {}",
                row.len(),
                attributes.len()
            )));
        }
        incidence.push(row);
    }
    FormalContext::new(objects, attributes, &incidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::expr::{boolean, chain, n5, product};
    use crate::wdl::{
        delta_from_join_dense, nabla_from_meet_dense, trivial_delta, trivial_nabla,
    };

    fn ctx_from(rows: &[&str]) -> FormalContext {
        let g = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let incidence: Vec<Vec<bool>> = rows
            .iter()
            .map(|r| r.chars().map(|c| c == 'X').collect())
            .collect();
        FormalContext::new(
            (0..g).map(|i| format!("g{i}")).collect(),
            (0..m).map(|j| format!("m{j}")).collect(),
            &incidence,
        )
        .unwrap()
    }

    #[test]
    fn derivations() {
        let ctx = ctx_from(&["XX.", ".X.", "..X"]);
        let empty = ElementSet::empty(3);
        assert_eq!(ctx.derive_objects(&empty).len(), 3, "empty set derives all");
        let one_row = ctx_from(&["XXX"]);
        assert_eq!(
            one_row.derive_objects(&ElementSet::from_iter(1, [0])).len(),
            3
        );
        // Galois connection on a fixed context
        let g = ctx.object_count();
        let m = ctx.attribute_count();
        for amask in 0..(1u32 << g) {
            for bmask in 0..(1u32 << m) {
                let a = ElementSet::from_iter(g, (0..g).filter(|i| amask >> i & 1 == 1));
                let b = ElementSet::from_iter(m, (0..m).filter(|j| bmask >> j & 1 == 1));
                assert_eq!(
                    b.is_subset(&ctx.derive_objects(&a)),
                    a.is_subset(&ctx.derive_attributes(&b))
                );
                // closure operator laws
                let aa = ctx.derive_attributes(&ctx.derive_objects(&a));
                assert!(a.is_subset(&aa));
                assert_eq!(
                    ctx.derive_objects(&a),
                    ctx.derive_objects(&aa),
                    "A' = A'''"
                );
            }
        }
    }

    #[test]
    fn concept_lattices_of_simple_contexts() {
        // no incidence at all: only (∅, M) and (G, ∅)
        let ctx = ctx_from(&["...", "...", "..."]);
        let (lat, _) = ctx.concept_lattice().unwrap();
        assert_eq!(lat.n(), 2);
        // contranominal 3x3 scale: the powerset cube
        let ctx = ctx_from(&[".XX", "X.X", "XX."]);
        let (lat, _) = ctx.concept_lattice().unwrap();
        assert!(are_isomorphic(&lat, &boolean(3).unwrap()).is_some());
        // the order context of a lattice reconstructs the lattice
        for l in [chain(4).unwrap(), n5(), boolean(2).unwrap()] {
            let incidence: Vec<Vec<bool>> = (0..l.n())
                .map(|i| (0..l.n()).map(|j| l.le(i, j)).collect())
                .collect();
            let labels: Vec<String> = (0..l.n()).map(|i| format!("e{i}")).collect();
            let ctx = FormalContext::new(labels.clone(), labels, &incidence).unwrap();
            let (clat, _) = ctx.concept_lattice().unwrap();
            assert!(are_isomorphic(&clat, &l).is_some());
        }
    }

    #[test]
    fn standard_contexts() {
        // the 3-chain has irreducibles {1, 2} (joins) and {0, 1} (meets);
        // the only incidence is 1 ≤ 1
        let c3 = chain(3).unwrap();
        let sc = standard_context(&c3);
        assert_eq!(sc.object_elements, vec![1, 2]);
        assert_eq!(sc.attribute_elements, vec![0, 1]);
        let grid: Vec<Vec<bool>> = (0..2)
            .map(|g| (0..2).map(|m| sc.context.incident(g, m)).collect())
            .collect();
        assert_eq!(grid, vec![vec![false, true], vec![false, false]]);

        let b2 = boolean(2).unwrap();
        let sc = standard_context(&b2);
        assert_eq!(
            (0..2).map(|g| sc.context.incident(g, g)).collect::<Vec<_>>(),
            vec![true, true]
        );
        assert!(!sc.context.incident(0, 1) && !sc.context.incident(1, 0));

        // pentagon: the derived attributes of a side element are the
        // meet-irreducibles above it
        let p5 = n5();
        let sc = standard_context(&p5);
        let obj = sc.object_elements.iter().position(|&j| j == 1).unwrap();
        let derived = sc
            .context
            .derive_objects(&ElementSet::from_iter(sc.object_elements.len(), [obj]));
        let above: Vec<usize> = derived
            .iter()
            .map(|m| sc.attribute_elements[m])
            .collect();
        assert_eq!(above, vec![1]);
        // reconstruction with the canonical embedding as witness
        let (clat, concepts) = sc.context.concept_lattice().unwrap();
        let phi = standard_embedding(&p5, &sc, &concepts).unwrap();
        for x in 0..p5.n() {
            for y in 0..p5.n() {
                assert_eq!(p5.le(x, y), clat.le(phi[x], phi[y]));
            }
        }
    }

    #[test]
    fn concept_algebras() {
        // the standard context of the diamond gives the Boolean complementation
        let b2 = boolean(2).unwrap();
        let (alg, _) = standard_context(&b2).context.concept_algebra().unwrap();
        let n = alg.lattice.n();
        for x in 0..n {
            assert_eq!(alg.lattice.meet(x, alg.delta.apply(x)), alg.lattice.bottom());
            assert_eq!(alg.lattice.join(x, alg.delta.apply(x)), alg.lattice.top());
            assert_eq!(alg.delta.apply(x), alg.nabla.apply(x));
        }
        // the standard context gives the operations induced by the
        // irreducibles; the full order context gives the trivial ones
        for l in [chain(4).unwrap(), n5(), b2.clone(), product(&chain(2).unwrap(), &chain(3).unwrap()).unwrap()] {
            let sc = standard_context(&l);
            let (alg, concepts) = sc.context.concept_algebra().unwrap();
            let phi = standard_embedding(&l, &sc, &concepts).unwrap();
            let small_d = delta_from_join_dense(&l, &l.join_irreducibles()).unwrap();
            let small_n = nabla_from_meet_dense(&l, &l.meet_irreducibles()).unwrap();
            for x in 0..l.n() {
                assert_eq!(phi[small_d.apply(x)], alg.delta.apply(phi[x]));
                assert_eq!(phi[small_n.apply(x)], alg.nabla.apply(phi[x]));
            }

            // with objects L ∖ {0} and attributes L ∖ {1} the induced
            // operations are the trivial pair, up to algebra isomorphism
            let nonbot: Vec<String> = (0..l.n()).filter(|&x| x != l.bottom()).map(|x| format!("o{x}")).collect();
            let nontop: Vec<String> = (0..l.n()).filter(|&x| x != l.top()).map(|x| format!("a{x}")).collect();
            let incidence: Vec<Vec<bool>> = (0..l.n())
                .filter(|&x| x != l.bottom())
                .map(|x| {
                    (0..l.n())
                        .filter(|&y| y != l.top())
                        .map(|y| l.le(x, y))
                        .collect()
                })
                .collect();
            let ctx = FormalContext::new(nonbot, nontop, &incidence).unwrap();
            let (alg, _) = ctx.concept_algebra().unwrap();
            let iso = crate::canon::are_isomorphic_with_ops(
                &l,
                &[trivial_delta(&l).table(), trivial_nabla(&l).table()],
                &alg.lattice,
                &[alg.delta.table(), alg.nabla.table()],
            );
            assert!(iso.is_some());
        }
    }

    #[test]
    fn cxt_round_trip() {
        let ctx = ctx_from(&["X.X", ".X.", "XX."]);
        let text = to_cxt(&ctx);
        assert!(text.starts_with("B\n\n3\n3\n\n"));
        let back = from_cxt(&text).unwrap();
        assert_eq!(back.objects, ctx.objects);
        assert_eq!(back.attributes, ctx.attributes);
        for g in 0..3 {
            for m in 0..3 {
                assert_eq!(back.incident(g, m), ctx.incident(g, m));
            }
        }
        assert_eq!(to_cxt(&back), text);
        assert!(from_cxt("Q\n\n1\n1\n\ng\nm\nX\n").is_err());
    }

    #[test]
    fn csv_ingestion() {
        let text = ",price,fast\ncar,X,X\nbike,,X\n";
        let ctx = from_csv(text).unwrap();
        assert_eq!(ctx.objects, vec!["car", "bike"]);
        assert_eq!(ctx.attributes, vec!["price", "fast"]);
        assert!(ctx.incident(0, 0) && ctx.incident(0, 1));
        assert!(!ctx.incident(1, 0) && ctx.incident(1, 1));
        assert!(from_csv(",a\nrow,X,X\n").is_err());
    }
}
