//! Geospatial road graph: vertices at points along every road, undirected
//! edges weighted by physical segment length in meters.

mod osm;

pub use osm::{parse_osm, parse_osm_file, OsmDocument, OsmError, OsmNode, OsmWay};

use std::collections::HashMap;

use thiserror::Error;

/// Mean Earth radius, meters.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Meters per degree of latitude on the great circle.
pub const M_PER_DEG: f64 = EARTH_RADIUS_M * std::f64::consts::PI / 180.0;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} out of range")]
    UnknownVertex(u32),
    #[error("edge ({u}, {v}) has non-positive or non-finite weight {weight}")]
    InvalidWeight { u: u32, v: u32, weight: f64 },
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("latitude {0} outside [-90, 90]")]
    LatitudeRange(f64),
    #[error("longitude {0} outside [-180, 180]")]
    LongitudeRange(f64),
}

/// A geographic point in degrees.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self, GraphError> {
        if !lat.is_finite() || !(-90.0..=90.0).contains(&lat) {
            return Err(GraphError::LatitudeRange(lat));
        }
        if !lon.is_finite() || !(-180.0..=180.0).contains(&lon) {
            return Err(GraphError::LongitudeRange(lon));
        }
        Ok(GeoPoint { lat, lon })
    }
}

/// Great-circle distance in meters on a spherical Earth.
pub fn haversine(a: GeoPoint, b: GeoPoint) -> f64 {
    let lat_a = a.lat.to_radians();
    let lat_b = b.lat.to_radians();
    let half_dlat = 0.5 * (lat_b - lat_a);
    let half_dlon = 0.5 * (b.lon - a.lon).to_radians();
    let s = half_dlat.sin().powi(2) + lat_a.cos() * lat_b.cos() * half_dlon.sin().powi(2);
    2.0 * EARTH_RADIUS_M * s.sqrt().min(1.0).asin()
}

#[derive(Debug, Clone)]
struct VertexRecord {
    point: GeoPoint,
    osm_id: i64,
    tags: Vec<(String, String)>,
}

/// Undirected weighted road graph.
///
/// Weights are segment lengths in meters. Adjacency is symmetric and the
/// structure is immutable once built, so it can be shared freely across
/// routing workers.
#[derive(Debug, Clone)]
pub struct RoadGraph {
    vertices: Vec<VertexRecord>,
    adjacency: Vec<Vec<(u32, f64)>>,
    edge_count: usize,
    /// Vertex ids sorted by latitude, for nearest-vertex queries.
    lat_order: Vec<u32>,
    /// Way segments collapsed because both endpoints shared coordinates.
    pub merged_segments: usize,
}

/// Statistics reported by [`build_graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub road_ways: usize,
    pub skipped_ways: usize,
    pub merged_vertices: usize,
    pub merged_segments: usize,
}

impl RoadGraph {
    /// Builds a graph from explicit vertices and weighted edges. Intended
    /// for synthetic networks and tests; [`build_graph`] derives weights
    /// from geometry.
    pub fn from_parts(points: Vec<GeoPoint>, edges: &[(u32, u32, f64)]) -> Result<Self, GraphError> {
        let n = points.len();
        let vertices = points
            .into_iter()
            .enumerate()
            .map(|(i, point)| VertexRecord { point, osm_id: i as i64, tags: Vec::new() })
            .collect();
        let mut graph = RoadGraph {
            vertices,
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
            lat_order: Vec::new(),
            merged_segments: 0,
        };
        for &(u, v, weight) in edges {
            if u as usize >= n {
                return Err(GraphError::UnknownVertex(u));
            }
            if v as usize >= n {
                return Err(GraphError::UnknownVertex(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !weight.is_finite() || weight <= 0.0 {
                return Err(GraphError::InvalidWeight { u, v, weight });
            }
            graph.insert_edge(u, v, weight);
        }
        graph.finalize();
        Ok(graph)
    }

    fn insert_edge(&mut self, u: u32, v: u32, weight: f64) {
        if self.adjacency[u as usize].iter().any(|&(n, _)| n == v) {
            return;
        }
        self.adjacency[u as usize].push((v, weight));
        self.adjacency[v as usize].push((u, weight));
        self.edge_count += 1;
    }

    fn finalize(&mut self) {
        for list in &mut self.adjacency {
            list.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        }
        let mut order: Vec<u32> = (0..self.vertices.len() as u32).collect();
        order.sort_by(|&a, &b| {
            self.vertices[a as usize]
                .point
                .lat
                .total_cmp(&self.vertices[b as usize].point.lat)
                .then(a.cmp(&b))
        });
        self.lat_order = order;
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_count
    }

    pub fn point(&self, v: u32) -> GeoPoint {
        self.vertices[v as usize].point
    }

    pub fn osm_id(&self, v: u32) -> i64 {
        self.vertices[v as usize].osm_id
    }

    pub fn tags(&self, v: u32) -> &[(String, String)] {
        &self.vertices[v as usize].tags
    }

    /// Neighbors of `v` with edge weights, ascending by neighbor id.
    pub fn neighbors(&self, v: u32) -> &[(u32, f64)] {
        &self.adjacency[v as usize]
    }

    /// Weight of edge (u, v) if present.
    pub fn weight(&self, u: u32, v: u32) -> Option<f64> {
        self.adjacency
            .get(u as usize)?
            .iter()
            .find(|&&(n, _)| n == v)
            .map(|&(_, w)| w)
    }

    /// Every undirected edge once, with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| (u as u32) < v)
                .map(move |&(v, w)| (u as u32, v, w))
        })
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    /// Bounding box (min_lat, min_lon, max_lat, max_lon).
    pub fn bounding_box(&self) -> Option<(f64, f64, f64, f64)> {
        if self.vertices.is_empty() {
            return None;
        }
        let mut bbox = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for v in &self.vertices {
            bbox.0 = bbox.0.min(v.point.lat);
            bbox.1 = bbox.1.min(v.point.lon);
            bbox.2 = bbox.2.max(v.point.lat);
            bbox.3 = bbox.3.max(v.point.lon);
        }
        Some(bbox)
    }
}

/// Builds the road graph from parsed OSM elements.
///
/// Only ways tagged with a `highway` key become roads. One vertex per
/// distinct referenced node; nodes with identical coordinates are merged
/// into a single vertex so coinciding points act as intersections. Edge
/// weights are haversine lengths of the node-to-node segments.
pub fn build_graph(nodes: &[OsmNode], ways: &[OsmWay]) -> (RoadGraph, BuildReport) {
    let mut report = BuildReport::default();
    let road_ways: Vec<&OsmWay> = ways
        .iter()
        .filter(|w| {
            let is_road = w.tags.iter().any(|(k, _)| k == "highway");
            if !is_road {
                report.skipped_ways += 1;
            }
            is_road
        })
        .collect();
    report.road_ways = road_ways.len();

    let mut referenced: HashMap<i64, ()> = HashMap::new();
    for way in &road_ways {
        for &r in &way.node_refs {
            referenced.insert(r, ());
        }
    }

    // Vertex ids follow node-document order; identical coordinates merge
    // into the first vertex seen at that point.
    let mut by_coord: HashMap<(u64, u64), u32> = HashMap::new();
    let mut node_vertex: HashMap<i64, u32> = HashMap::new();
    let mut vertices: Vec<VertexRecord> = Vec::new();
    for node in nodes {
        if !referenced.contains_key(&node.id) {
            continue;
        }
        let key = (node.point.lat.to_bits(), node.point.lon.to_bits());
        match by_coord.get(&key) {
            Some(&v) => {
                report.merged_vertices += 1;
                let record = &mut vertices[v as usize];
                record.osm_id = record.osm_id.min(node.id);
                record.tags.extend(node.tags.iter().cloned());
                node_vertex.insert(node.id, v);
            }
            None => {
                let v = vertices.len() as u32;
                vertices.push(VertexRecord {
                    point: node.point,
                    osm_id: node.id,
                    tags: node.tags.clone(),
                });
                by_coord.insert(key, v);
                node_vertex.insert(node.id, v);
            }
        }
    }

    let mut graph = RoadGraph {
        adjacency: vec![Vec::new(); vertices.len()],
        vertices,
        edge_count: 0,
        lat_order: Vec::new(),
        merged_segments: 0,
    };
    for way in &road_ways {
        for pair in way.node_refs.windows(2) {
            let (Some(&u), Some(&v)) = (node_vertex.get(&pair[0]), node_vertex.get(&pair[1]))
            else {
                // parse_osm drops ways with unresolved refs; a road way is
                // fully resolvable here.
                continue;
            };
            if u == v {
                report.merged_segments += 1;
                continue;
            }
            let weight = haversine(graph.vertices[u as usize].point, graph.vertices[v as usize].point);
            graph.insert_edge(u, v, weight);
        }
    }
    graph.merged_segments = report.merged_segments;
    graph.finalize();
    (graph, report)
}

/// Vertex closest to `p` by great-circle distance; ties broken by the
/// smallest vertex id.
///
/// Sweeps outward from the latitude rank of `p`, pruning with the exact
/// bound `haversine >= M_PER_DEG * |dlat|`.
pub fn nearest_vertex(graph: &RoadGraph, p: GeoPoint) -> Result<u32, GraphError> {
    if graph.vertices.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let order = &graph.lat_order;
    let start = order.partition_point(|&v| graph.vertices[v as usize].point.lat < p.lat);

    let mut best: Option<(f64, u32)> = None;
    let mut consider = |v: u32, best: &mut Option<(f64, u32)>| {
        let d = haversine(graph.vertices[v as usize].point, p);
        let candidate = (d, v);
        if best.map_or(true, |b| candidate.0 < b.0 || (candidate.0 == b.0 && candidate.1 < b.1)) {
            *best = Some(candidate);
        }
    };

    let mut lo = start as isize - 1;
    let mut hi = start;
    loop {
        let best_d = best.map_or(f64::MAX, |b| b.0);
        let lo_open = lo >= 0 && {
            let v = order[lo as usize];
            (p.lat - graph.vertices[v as usize].point.lat).abs() * M_PER_DEG <= best_d
        };
        let hi_open = hi < order.len() && {
            let v = order[hi];
            (graph.vertices[order[hi] as usize].point.lat - p.lat).abs() * M_PER_DEG <= best_d
                || v == order[hi] && false
        };
        if !lo_open && !hi_open {
            break;
        }
        if lo_open {
            consider(order[lo as usize], &mut best);
            lo -= 1;
        }
        if hi_open {
            consider(order[hi], &mut best);
            hi += 1;
        }
    }
    Ok(best.expect("non-empty graph").1)
}
