//! Finite Cayley-graph balls: the desk-scale windows on which SFT
//! configurations are checked.

use std::collections::HashMap;

use super::{DynModel, GroupError};
use crate::words::{Generator, Letter, Sign, Word};

/// The radius-`r` ball around the identity in the Cayley graph over
/// `edge_gens`: elements in BFS discovery order (element 0 is the identity)
/// with their graph distances, and the right-multiplication adjacency
/// `g -> g·s` for each edge letter (`None` marks the exterior).
pub struct Ball {
    model: DynModel,
    edge_gens: Vec<Generator>,
    radius: usize,
    elements: Vec<Word>,
    distances: Vec<usize>,
    adjacency: Vec<Vec<Option<usize>>>,
    index: HashMap<Word, usize>,
}

impl Ball {
    pub fn model(&self) -> &DynModel {
        &self.model
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn edge_generators(&self) -> &[Generator] {
        &self.edge_gens
    }

    /// Elements as model normal forms, in BFS discovery order.
    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &Word {
        &self.elements[i]
    }

    /// Graph distance of element `i` from the identity.
    pub fn distance(&self, i: usize) -> usize {
        self.distances[i]
    }

    /// The edge letters in column order: `g, g^-1` for each edge generator.
    pub fn column_letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * self.edge_gens.len());
        for g in &self.edge_gens {
            out.push(Letter { gen: g.clone(), sign: Sign::Pos });
            out.push(Letter { gen: g.clone(), sign: Sign::Neg });
        }
        out
    }

    /// Adjacency along one edge letter; `None` when `g·s` leaves the ball.
    pub fn neighbor(&self, i: usize, l: &Letter) -> Result<Option<usize>, GroupError> {
        let c = self
            .edge_gens
            .iter()
            .position(|g| *g == l.gen)
            .ok_or_else(|| GroupError::OutsideAlphabet { gen: l.gen.clone() })?;
        Ok(self.adjacency[i][2 * c + if l.sign == Sign::Pos { 0 } else { 1 }])
    }

    /// Looks up the element represented by `w`: first by exact normal form,
    /// then — for models without canonical normal forms — by pairwise
    /// equality against every element.
    pub fn find(&self, w: &Word) -> Result<Option<usize>, GroupError> {
        let nf = self.model.normal_form(w)?;
        if let Some(&i) = self.index.get(&nf) {
            return Ok(Some(i));
        }
        if !self.model.has_canonical_normal_form() {
            for (i, e) in self.elements.iter().enumerate() {
                if self.model.equal(&nf, e)? {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }

    /// Index of `element(i)·w`, or `None` when the product leaves the ball.
    pub fn offset(&self, i: usize, w: &Word) -> Result<Option<usize>, GroupError> {
        self.find(&self.elements[i].concat(w))
    }
}

/// Builds the radius-`radius` ball over `edge_gens` by breadth-first search,
/// deduplicating through the model. Deterministic: elements appear in the
/// order they are first reached, scanning each frontier element's columns
/// `g, g^-1` per generator in the given order.
pub fn build_ball(
    model: DynModel,
    edge_gens: &[Generator],
    radius: usize,
) -> Result<Ball, GroupError> {
    for g in edge_gens {
        if !model.alphabet().contains(g) {
            return Err(GroupError::OutsideAlphabet { gen: g.clone() });
        }
    }
    let letters: Vec<Word> = {
        let mut out = Vec::new();
        for g in edge_gens {
            out.push(Word::from_gen(g));
            out.push(Word::from_gen(g).inverse());
        }
        out
    };

    let mut elements = vec![model.normal_form(&Word::identity())?];
    let mut distances = vec![0usize];
    let mut index: HashMap<Word, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let canonical = model.has_canonical_normal_form();

    let mut frontier: Vec<usize> = vec![0];
    for d in 1..=radius {
        let mut next = Vec::new();
        for &i in &frontier {
            for l in &letters {
                let product = model.multiply(&elements[i], l)?;
                let mut known = index.contains_key(&product);
                if !known && !canonical {
                    for e in &elements {
                        if model.equal(&product, e)? {
                            known = true;
                            break;
                        }
                    }
                }
                if !known {
                    let id = elements.len();
                    index.insert(product.clone(), id);
                    elements.push(product);
                    distances.push(d);
                    next.push(id);
                }
            }
        }
        frontier = next;
    }

    let ball = Ball {
        model,
        edge_gens: edge_gens.to_vec(),
        radius,
        adjacency: Vec::new(),
        elements,
        distances,
        index,
    };
    let mut adjacency = Vec::with_capacity(ball.elements.len());
    for e in &ball.elements {
        let mut row = Vec::with_capacity(letters.len());
        for l in &letters {
            row.push(ball.find(&e.concat(l))?);
        }
        adjacency.push(row);
    }
    Ok(Ball { adjacency, ..ball })
}
