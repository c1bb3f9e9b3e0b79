use std::collections::VecDeque;

/// Searches for a rank function on a finite quasi-order: order-equivalent
/// elements share a rank, every cover step adds exactly one, and the minimum
/// of each connected component is 0.
///
/// On failure returns a cover `(a, b)` whose increment contradicts ranks
/// forced along another path.
pub fn rank_function(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Vec<usize>, (usize, usize)> {
    let rep: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&j| le(i, j) && le(j, i)).unwrap_or(i))
        .collect();
    let reps: Vec<usize> = (0..n).filter(|&i| rep[i] == i).collect();
    let lt = |a: usize, b: usize| le(a, b) && !le(b, a);

    // adjacency over covers, signed by direction
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut covers = Vec::new();
    for &a in &reps {
        for &b in &reps {
            if lt(a, b) && !reps.iter().any(|&c| lt(a, c) && lt(c, b)) {
                adj[a].push((b, 1));
                adj[b].push((a, -1));
                covers.push((a, b));
            }
        }
    }

    let mut pot: Vec<Option<i64>> = vec![None; n];
    for &start in &reps {
        if pot[start].is_some() {
            continue;
        }
        pot[start] = Some(0);
        let mut component = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            let pa = pot[a].expect("visited");
            for &(b, d) in &adj[a] {
                match pot[b] {
                    None => {
                        pot[b] = Some(pa + d);
                        component.push(b);
                        queue.push_back(b);
                    }
                    Some(pb) if pb != pa + d => {
                        return Err(if d == 1 { (a, b) } else { (b, a) });
                    }
                    Some(_) => {}
                }
            }
        }
        let min = component.iter().map(|&c| pot[c].expect("visited")).min().unwrap_or(0);
        for c in component {
            pot[c] = pot[c].map(|p| p - min);
        }
    }
    Ok((0..n).map(|i| pot[rep[i]].expect("every class visited") as usize).collect())
}

/// True when `b` covers `a`: `a < b` with nothing strictly between.
pub fn is_cover(n: usize, le: impl Fn(usize, usize) -> bool, a: usize, b: usize) -> bool {
    let lt = |x: usize, y: usize| le(x, y) && !le(y, x);
    lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> impl Fn(usize, usize) -> bool {
        let mut m = vec![false; n * n];
        for i in 0..n {
            m[i * n + i] = true;
        }
        for &(a, b) in pairs {
            m[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i * n + k] && m[k * n + j] {
                        m[i * n + j] = true;
                    }
                }
            }
        }
        move |a, b| m[a * n + b]
    }

    #[test]
    fn chain_and_boolean_square() {
        assert_eq!(rank_function(3, from_pairs(3, &[(0, 1), (1, 2)])), Ok(vec![0, 1, 2]));
        let le = from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(rank_function(4, le), Ok(vec![0, 1, 1, 2]));
    }

    #[test]
    fn pentagon_is_not_graded() {
        // 0 < a < b < 1 and 0 < c < 1
        let le = from_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
        let (a, b) = rank_function(5, &le).unwrap_err();
        assert!(is_cover(5, &le, a, b));
    }

    #[test]
    fn equivalent_elements_share_rank() {
        // 1 and 2 are order-equivalent
        let le = from_pairs(4, &[(0, 1), (1, 2), (2, 1), (2, 3)]);
        assert_eq!(rank_function(4, le), Ok(vec![0, 1, 1, 2]));
    }
}
