from dataclasses import dataclass

import numpy as np

from uncertainty_app.error_messages import EMPTY_GALLERY_ERROR, QUERY_DIM_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.numeric.matrix_ops import as_matrix, cosine_matrix


@dataclass
class RankedList:
    query_id: object
    gallery_ids: list  # best first
    relevance: np.ndarray  # 1 where the gallery label equals the query label

    @property
    def relevant_count(self):
        return int(self.relevance.sum())

    def __len__(self):
        return len(self.gallery_ids)


def rank(queries, gallery, qlabels, glabels, query_ids=None, gallery_ids=None):
    """Rank the whole gallery for every query by descending cosine similarity.

    Ties go to the smaller gallery id.
    """
    queries, gallery = as_matrix(queries), as_matrix(gallery)
    if gallery.shape[0] == 0:
        raise ValueError(EMPTY_GALLERY_ERROR)
    if queries.shape[1] != gallery.shape[1]:
        raise ShapeMismatchError(QUERY_DIM_ERROR.format(queries=queries.shape[1], gallery=gallery.shape[1]))
    qlabels, glabels = np.asarray(qlabels), np.asarray(glabels)
    query_ids = list(range(queries.shape[0])) if query_ids is None else list(query_ids)
    gallery_ids = list(range(gallery.shape[0])) if gallery_ids is None else list(gallery_ids)

    similarity = cosine_matrix(queries, gallery)
    id_rank = np.empty(gallery.shape[0], dtype=np.int64)
    id_rank[sorted(range(gallery.shape[0]), key=gallery_ids.__getitem__)] = np.arange(gallery.shape[0])
    ranked = []
    for i in range(queries.shape[0]):
        order = np.lexsort((id_rank, -similarity[i]))
        ranked.append(RankedList(
            query_id=query_ids[i],
            gallery_ids=[gallery_ids[k] for k in order],
            relevance=(glabels[order] == qlabels[i]).astype(np.int64),
        ))
    return ranked
